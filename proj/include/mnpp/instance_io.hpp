#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "mnpp/model.hpp"

namespace mnpp {

inline constexpr std::string_view kInstanceFormat = "mnpp-instance/1";

/// Canonical JSON text of an instance. Stable byte-for-byte for equal instances.
///
///   { "format", "meta": {"model", "pi", "seed", "grid"}, "outlets",
///     "demands": [{"id","c","c_bar","d","beta","gamma"}],
///     "edges": [{"e","f","a_hat","b_hat","a_bar","b_bar"}] }
///
/// "pi" is null when unbounded. "grid" is {"min","max","step"} for uniform
/// grids and {"prices": [...]} otherwise.
std::string instance_to_text(const Instance& inst);

/// Strict parse: unknown or missing fields raise InputError naming the field.
Instance instance_from_text(std::string_view text);

void save_instance(const Instance& inst, const std::filesystem::path& path);
Instance load_instance(const std::filesystem::path& path);

/// Whole-file read; throws InputError if the file cannot be opened.
std::string read_file(const std::filesystem::path& path);
/// Writes through a temporary file and renames, so readers never see partial output.
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace mnpp
