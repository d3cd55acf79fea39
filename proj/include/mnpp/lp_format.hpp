#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "mnpp/linear_model.hpp"

namespace mnpp {

/// Writes the model in LP text format (Maximize / Subject To / Bounds /
/// Binary / End). Output is deterministic: sections follow declaration order
/// and numbers use shortest round-trip formatting. Every variable appears in
/// Bounds so that declaration order survives a read back.
void write_lp(const LinearModel& model, std::ostream& out);
void write_lp(const LinearModel& model, const std::filesystem::path& path);
std::string to_lp_string(const LinearModel& model);

/// Reads the maximization LP subset produced by write_lp. Throws InputError
/// naming the offending line.
LinearModel read_lp(std::istream& in);
LinearModel read_lp(const std::filesystem::path& path);

/// Shortest decimal text that parses back to the same double.
std::string format_number(double value);

}  // namespace mnpp
