#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "bottleneck/instance.hpp"

namespace bottleneck {

using Json = nlohmann::ordered_json;

/// Extended instance document:
///   {jobs:[{id,duration,due_date|null,weight,consumption:{"k":q}}],
///    precedences:[[i,j]], resources:[{id,base_pattern:[24],overlay:{"t":delta}}], horizon}
/// Written in canonical order: zero consumptions and zero overlay entries are omitted.
Json instance_to_json(const Instance& inst);

/// Parses and structurally validates; throws InstanceError on malformed input.
Instance instance_from_json(const Json& doc);

Json schedule_to_json(const Schedule& schedule);
Schedule schedule_from_json(const Json& doc);

/// Canonical text form (two-space indent, trailing newline).
std::string dump_canonical(const Json& doc);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

Instance load_instance(const std::filesystem::path& path);
void save_instance(const std::filesystem::path& path, const Instance& inst);

}  // namespace bottleneck
