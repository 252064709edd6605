#include "micropolar/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "micropolar/errors.hpp"

namespace micropolar {

static_assert(std::endian::native == std::endian::little, "snapshot layout assumes little endian");

namespace {

constexpr char kMagic[8] = {'M', 'P', 'F', 'I', 'E', 'L', 'D', '1'};

template <class T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw ConfigError("snapshot truncated");
  return v;
}

}  // namespace

const SpectralField& Snapshot::get(const std::string& name) const {
  for (const auto& f : fields)
    if (f.name == name) return f.field;
  throw ConfigError("snapshot has no field named '" + name + "'");
}

void write_snapshot(std::ostream& out, const Snapshot& snap) {
  if (snap.fields.empty()) throw std::invalid_argument("empty snapshot");
  const Grid& g = snap.fields.front().field.grid();
  out.write(kMagic, sizeof kMagic);
  put<std::int32_t>(out, g.points());
  put<std::int32_t>(out, g.capacity());
  put<std::int32_t>(out, g.shape() == BandShape::box ? 0 : 1);
  put<double>(out, snap.time);
  put<std::int32_t>(out, static_cast<std::int32_t>(snap.fields.size()));
  for (const auto& nf : snap.fields) {
    const SpectralField& f = nf.field;
    if (f.grid_ptr() != snap.fields.front().field.grid_ptr())
      throw std::invalid_argument("snapshot fields must share one grid");
    put<std::int32_t>(out, static_cast<std::int32_t>(f.rank()));
    put<std::int32_t>(out, f.band());
    put<std::int32_t>(out, static_cast<std::int32_t>(nf.name.size()));
    out.write(nf.name.data(), static_cast<std::streamsize>(nf.name.size()));
    std::uint64_t count = 0;
    for (std::size_t s = 0; s < g.spectral_size(); ++s)
      if (g.in_band(s, f.band())) count += static_cast<std::uint64_t>(f.components());
    put<std::uint64_t>(out, count);
    for (std::size_t s = 0; s < g.spectral_size(); ++s) {
      if (!g.in_band(s, f.band())) continue;
      const auto& m = g.mode(s);
      for (int c = 0; c < f.components(); ++c) {
        put<std::int32_t>(out, c);
        put<std::int32_t>(out, m[0]);
        put<std::int32_t>(out, m[1]);
        put<std::int32_t>(out, m[2]);
        put<double>(out, f.at(c, s).real());
        put<double>(out, f.at(c, s).imag());
      }
    }
  }
  if (!out) throw std::runtime_error("snapshot write failed");
}

void write_snapshot(const std::filesystem::path& path, const Snapshot& snap) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
  write_snapshot(out, snap);
}

Snapshot read_snapshot(std::istream& in, GridPtr grid) {
  char magic[8];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0) throw ConfigError("not a field snapshot");
  const int points = get<std::int32_t>(in);
  const int capacity = get<std::int32_t>(in);
  const BandShape shape = get<std::int32_t>(in) == 0 ? BandShape::box : BandShape::ball;
  if (!grid || grid->points() != points || grid->capacity() != capacity || grid->shape() != shape)
    grid = Grid::make(capacity, points, shape);
  Snapshot snap;
  snap.time = get<double>(in);
  const int nf = get<std::int32_t>(in);
  if (nf < 0) throw ConfigError("corrupt snapshot field count");
  for (int f = 0; f < nf; ++f) {
    const int rank = get<std::int32_t>(in);
    const int band = get<std::int32_t>(in);
    if (rank < 0 || rank > static_cast<int>(Rank::matrix)) throw ConfigError("corrupt snapshot rank");
    const int len = get<std::int32_t>(in);
    if (len < 0 || len > 4096) throw ConfigError("corrupt snapshot name");
    std::string name(static_cast<std::size_t>(len), '\0');
    in.read(name.data(), len);
    SpectralField field(grid, static_cast<Rank>(rank), band);
    const auto count = get<std::uint64_t>(in);
    for (std::uint64_t r = 0; r < count; ++r) {
      const int c = get<std::int32_t>(in);
      std::array<int, 3> m{get<std::int32_t>(in), get<std::int32_t>(in), get<std::int32_t>(in)};
      const double re = get<double>(in);
      const double im = get<double>(in);
      const auto s = grid->slot_of(m);
      if (s < 0 || c < 0 || c >= field.components()) throw ConfigError("snapshot coefficient out of range");
      field.at(c, static_cast<std::size_t>(s)) = {re, im};
    }
    snap.fields.push_back({std::move(name), std::move(field)});
  }
  return snap;
}

Snapshot read_snapshot(const std::filesystem::path& path, GridPtr grid) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open snapshot " + path.string());
  return read_snapshot(in, std::move(grid));
}

}  // namespace micropolar
