#include "bottleneck/psplib.hpp"

#include <algorithm>
#include <sstream>

namespace bottleneck {

namespace {

struct Lines {
  std::vector<std::string> text;

  int size() const { return static_cast<int>(text.size()); }
  // 1-based access
  const std::string& at(int line) const { return text[static_cast<std::size_t>(line - 1)]; }
};

Lines split_lines(const std::string& text) {
  Lines out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.text.push_back(line);
  }
  return out;
}

std::string trim_left(const std::string& s) {
  const auto pos = s.find_first_not_of(" \t");
  return pos == std::string::npos ? std::string() : s.substr(pos);
}

bool starts_with(const std::string& s, const std::string& prefix) { return trim_left(s).rfind(prefix, 0) == 0; }

bool is_separator(const std::string& s) { return starts_with(s, "***"); }

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

int to_int(const std::string& tok, int line) {
  std::size_t pos = 0;
  int value = 0;
  try {
    value = std::stoi(tok, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != tok.size()) throw ParseError(line, "expected an integer, found '" + tok + "'");
  return value;
}

std::vector<int> ints(const std::string& s, int line) {
  std::vector<int> out;
  for (const auto& tok : tokens(s)) out.push_back(to_int(tok, line));
  return out;
}

// Line number of the first line starting with `prefix`, or 0.
int find_line(const Lines& lines, const std::string& prefix, int from = 1) {
  for (int l = from; l <= lines.size(); ++l) {
    if (starts_with(lines.at(l), prefix)) return l;
  }
  return 0;
}

int value_after_colon(const Lines& lines, int line) {
  const auto& s = lines.at(line);
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw ParseError(line, "expected 'key : value'");
  const auto toks = tokens(s.substr(colon + 1));
  if (toks.empty()) throw ParseError(line, "missing value");
  return to_int(toks.front(), line);
}

int require_section(const Lines& lines, const std::string& header) {
  const int l = find_line(lines, header);
  if (l == 0) throw ParseError(lines.size(), "missing section '" + header + "'");
  return l;
}

// Row `row` (0-based) of a section whose first data line is `first`.
int row_line(const Lines& lines, int first, int row, int expected, const char* section) {
  const int l = first + row;
  if (l > lines.size() || is_separator(lines.at(l)) || trim_left(lines.at(l)).empty()) {
    throw ParseError(std::min(l, std::max(lines.size(), 1)), std::string(section) + " section truncated: expected " +
                                                                  std::to_string(expected) + " jobs, found " +
                                                                  std::to_string(row));
  }
  return l;
}

void expect_section_end(const Lines& lines, int l, const char* section) {
  if (l <= lines.size() && !is_separator(lines.at(l)) && !trim_left(lines.at(l)).empty()) {
    throw ParseError(l, std::string(section) + " section has more jobs than declared");
  }
}

}  // namespace

RawNetwork parse_psplib(const std::string& text) {
  const Lines lines = split_lines(text);
  RawNetwork net;

  const int jobs_line = find_line(lines, "jobs (incl. supersource/sink");
  if (jobs_line == 0) throw ParseError(std::max(lines.size(), 1), "missing job count line");
  const int njobs = value_after_colon(lines, jobs_line);
  if (njobs < 3) throw ParseError(jobs_line, "network needs a source, a sink and at least one job");
  net.file_jobs = njobs;

  if (const int h = find_line(lines, "horizon"); h != 0) net.horizon = value_after_colon(lines, h);

  const int renewable_line = find_line(lines, "- renewable");
  if (renewable_line == 0) throw ParseError(std::max(lines.size(), 1), "missing renewable resource count");
  const int nres = value_after_colon(lines, renewable_line);

  // File-numbered data, index = file job number - 1.
  std::vector<std::vector<int>> successors(static_cast<std::size_t>(njobs));
  std::vector<int> durations(static_cast<std::size_t>(njobs));
  std::vector<std::vector<int>> requests(static_cast<std::size_t>(njobs));
  std::vector<int> request_lines(static_cast<std::size_t>(njobs));

  const int prec = require_section(lines, "PRECEDENCE RELATIONS:");
  if (prec + 1 > lines.size() || !starts_with(lines.at(prec + 1), "jobnr.")) {
    throw ParseError(std::min(prec + 1, lines.size()), "malformed precedence header");
  }
  for (int r = 0; r < njobs; ++r) {
    const int l = row_line(lines, prec + 2, r, njobs, "precedence");
    const auto v = ints(lines.at(l), l);
    if (v.size() < 3) throw ParseError(l, "precedence row needs job, modes and successor count");
    if (v[0] != r + 1) throw ParseError(l, "expected job " + std::to_string(r + 1) + ", found " + std::to_string(v[0]));
    if (v[1] != 1) throw ParseError(l, "only single-mode networks are supported");
    if (static_cast<int>(v.size()) != 3 + v[2]) throw ParseError(l, "successor count does not match the list");
    for (std::size_t i = 3; i < v.size(); ++i) {
      if (v[i] < 1 || v[i] > njobs) throw ParseError(l, "successor " + std::to_string(v[i]) + " out of range");
      successors[static_cast<std::size_t>(r)].push_back(v[i]);
    }
  }
  expect_section_end(lines, prec + 2 + njobs, "precedence");

  const int req = require_section(lines, "REQUESTS/DURATIONS:");
  if (req + 2 > lines.size() || !starts_with(lines.at(req + 1), "jobnr.") || !starts_with(lines.at(req + 2), "---")) {
    throw ParseError(std::min(req + 1, lines.size()), "malformed requests header");
  }
  for (int r = 0; r < njobs; ++r) {
    const int l = row_line(lines, req + 3, r, njobs, "requests");
    const auto v = ints(lines.at(l), l);
    if (static_cast<int>(v.size()) != 3 + nres) {
      throw ParseError(l, "expected " + std::to_string(3 + nres) + " fields, found " + std::to_string(v.size()));
    }
    if (v[0] != r + 1) throw ParseError(l, "expected job " + std::to_string(r + 1) + ", found " + std::to_string(v[0]));
    if (v[2] < 0) throw ParseError(l, "negative duration");
    durations[static_cast<std::size_t>(r)] = v[2];
    requests[static_cast<std::size_t>(r)].assign(v.begin() + 3, v.end());
    request_lines[static_cast<std::size_t>(r)] = l;
  }
  expect_section_end(lines, req + 3 + njobs, "requests");

  const int avail = require_section(lines, "RESOURCEAVAILABILITIES:");
  if (avail + 2 > lines.size()) throw ParseError(lines.size(), "resource availabilities truncated");
  net.capacities = ints(lines.at(avail + 2), avail + 2);
  if (static_cast<int>(net.capacities.size()) != nres) {
    throw ParseError(avail + 2, "expected " + std::to_string(nres) + " availabilities");
  }

  // Dummy source (first) and sink (last) carry no work.
  for (int dummy : {0, njobs - 1}) {
    const auto& q = requests[static_cast<std::size_t>(dummy)];
    if (durations[static_cast<std::size_t>(dummy)] != 0 || std::any_of(q.begin(), q.end(), [](int x) { return x != 0; })) {
      throw ParseError(request_lines[static_cast<std::size_t>(dummy)], "expected a zero-duration dummy job");
    }
  }
  for (int r = 1; r + 1 < njobs; ++r) {
    if (durations[static_cast<std::size_t>(r)] == 0) {
      throw ParseError(request_lines[static_cast<std::size_t>(r)], "zero-duration job inside the network");
    }
    RawJob job;
    job.id = r;  // file job r + 1 becomes r
    job.duration = durations[static_cast<std::size_t>(r)];
    job.requests = requests[static_cast<std::size_t>(r)];
    for (int s : successors[static_cast<std::size_t>(r)]) {
      if (s == njobs) continue;
      if (s == 1) throw ParseError(prec + 2 + r, "edge into the source job");
      job.successors.push_back(s - 1);
    }
    std::sort(job.successors.begin(), job.successors.end());
    net.jobs.push_back(std::move(job));
  }
  return net;
}

std::vector<int> downstream_lengths(const RawNetwork& network) {
  const int n = network.job_count();
  std::vector<int> length(static_cast<std::size_t>(n), -1);
  std::vector<int> state(static_cast<std::size_t>(n), 0);  // 0 new, 1 open, 2 done
  // Iterative DFS post-order.
  for (int root = 1; root <= n; ++root) {
    if (state[static_cast<std::size_t>(root - 1)] == 2) continue;
    std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
    state[static_cast<std::size_t>(root - 1)] = 1;
    while (!stack.empty()) {
      auto& [j, next] = stack.back();
      const auto& succ = network.jobs[static_cast<std::size_t>(j - 1)].successors;
      if (next < succ.size()) {
        const int s = succ[next++];
        const auto st = state[static_cast<std::size_t>(s - 1)];
        if (st == 1) throw std::invalid_argument("activity network has a cycle");
        if (st == 0) {
          state[static_cast<std::size_t>(s - 1)] = 1;
          stack.emplace_back(s, 0);
        }
        continue;
      }
      int best = 0;
      for (int s : succ) best = std::max(best, length[static_cast<std::size_t>(s - 1)]);
      length[static_cast<std::size_t>(j - 1)] = network.jobs[static_cast<std::size_t>(j - 1)].duration + best;
      state[static_cast<std::size_t>(j - 1)] = 2;
      stack.pop_back();
    }
  }
  return length;
}

std::vector<std::pair<int, int>> to_inforest(const RawNetwork& network) {
  const auto downstream = downstream_lengths(network);
  std::vector<std::pair<int, int>> edges;
  for (const auto& job : network.jobs) {
    int keep = 0;
    for (int s : job.successors) {
      if (keep == 0 || downstream[static_cast<std::size_t>(s - 1)] > downstream[static_cast<std::size_t>(keep - 1)] ||
          (downstream[static_cast<std::size_t>(s - 1)] == downstream[static_cast<std::size_t>(keep - 1)] && s < keep)) {
        keep = s;
      }
    }
    if (keep != 0) edges.emplace_back(job.id, keep);
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace bottleneck
