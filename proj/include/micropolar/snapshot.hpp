#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "micropolar/spectral_field.hpp"

namespace micropolar {

/// Binary field container. Layout, little endian:
///   char[8]  "MPFIELD1"
///   int32    grid points N, grid capacity, band shape (0 box, 1 ball)
///   double   time
///   int32    field count F
///   F times: int32 rank, int32 band, int32 name length, name bytes,
///            uint64 coefficient count C, then C records of
///            (int32 component, int32 m1, int32 m2, int32 m3, double re, double im)
/// Only in-band coefficients of the stored half spectrum are written, in slot order.
struct NamedField {
  std::string name;
  SpectralField field;
};

struct Snapshot {
  double time = 0.0;
  std::vector<NamedField> fields;

  const SpectralField& get(const std::string& name) const;
};

void write_snapshot(std::ostream& out, const Snapshot& snap);
void write_snapshot(const std::filesystem::path& path, const Snapshot& snap);
/// Rebuilds the grid from the header unless `grid` already matches it.
Snapshot read_snapshot(std::istream& in, GridPtr grid = nullptr);
Snapshot read_snapshot(const std::filesystem::path& path, GridPtr grid = nullptr);

}  // namespace micropolar
