#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bottleneck {

/// Parse failure carrying the 1-based line number it refers to.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct RawJob {
  int id = 0;  // renumbered 1..n after dummy removal
  int duration = 0;
  std::vector<int> requests;    // per renewable resource
  std::vector<int> successors;  // renumbered ids, dummies removed
};

/// Single-mode activity network with its dummy source and sink removed.
struct RawNetwork {
  int file_jobs = 0;  // job count declared in the file, dummies included
  int horizon = 0;    // horizon declared in the file
  std::vector<RawJob> jobs;
  std::vector<int> capacities;  // renewable resource availabilities

  int job_count() const { return static_cast<int>(jobs.size()); }
};

/// Parses PSPLIB single-mode (.sm) text. Throws ParseError naming the line.
RawNetwork parse_psplib(const std::string& text);

/// Reduces the network to an in-forest: a job with several successors keeps
/// only the edge towards the successor with the longest duration-weighted
/// downstream path (ties: lowest id). Returns the kept (i, j) edges sorted.
std::vector<std::pair<int, int>> to_inforest(const RawNetwork& network);

/// Longest duration-weighted path starting at each job (job included),
/// indexed by id - 1.
std::vector<int> downstream_lengths(const RawNetwork& network);

}  // namespace bottleneck
