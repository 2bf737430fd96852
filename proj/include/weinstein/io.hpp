#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "weinstein/halfspace.hpp"

namespace weinstein {

/// Failure reading or writing a file; the message names the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Header "x1,...,xd,<columns...>", one row per node in grid order.
/// Every column must have grid.size() values.
void write_node_csv(const std::filesystem::path& path, const HalfSpaceGrid& grid,
                    const std::vector<std::string>& names, const std::vector<std::span<const double>>& columns);

void write_grid_csv(const std::filesystem::path& path, const RealField& f, const std::string& name = "value");

/// Reads a file written by write_grid_csv (first value column). The grid is
/// rebuilt from the coordinates: cell-centered, symmetric lateral axes, x_d
/// nodes starting at half a spacing. Throws IoError on malformed input.
RealField read_grid_csv(const std::filesystem::path& path, const WeinsteinParams& params);

}  // namespace weinstein
