#pragma once

#include <filesystem>
#include <iosfwd>

#include "msfou/process_paths.hpp"

namespace msfou {

/// CSV with header `t,value` and one row per grid point t_0..t_N, written
/// with 17 significant digits.
void write_path_csv(std::ostream& out, const SamplePath& path);
void write_path_csv(const std::filesystem::path& file, const SamplePath& path);

/// Inverse of write_path_csv. The spacing is taken from the first two rows
/// and every row must lie on that uniform grid.
SamplePath read_path_csv(std::istream& in);
SamplePath read_path_csv(const std::filesystem::path& file);

}  // namespace msfou
