#pragma once

#include <filesystem>
#include <iosfwd>

#include "ferronem/fields.hpp"

namespace ferronem::cli {

/// Legacy ASCII VTK 3.0 unstructured grid: points (z = 0), triangle cells,
/// point data Psi1..Psi4 and the vectors Q = (Psi1, Psi2, 0) and
/// M = (Psi3, Psi4, 0). Reals are printed with 17 significant digits.
void write_vtk(const NodalField& field, std::ostream& out);
/// Throws Error if the file cannot be written.
void save_vtk(const NodalField& field, const std::filesystem::path& path);

}  // namespace ferronem::cli
