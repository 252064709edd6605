#include <stdexcept>

#include "micropolar/fields.hpp"

namespace micropolar {

namespace {

Rank result_rank(const SpectralField& f, const SpectralField& g, Product kind) {
  switch (kind) {
    case Product::scale:
      if (f.rank() == Rank::scalar) return g.rank();
      if (g.rank() == Rank::scalar) return f.rank();
      break;
    case Product::dot:
      if (f.rank() == Rank::vector && g.rank() == Rank::vector) return Rank::scalar;
      break;
    case Product::cross:
      if (f.rank() == Rank::vector && g.rank() == Rank::vector) return Rank::vector;
      break;
    case Product::matvec:
      if (f.rank() == Rank::symmetric && g.rank() == Rank::vector) return Rank::vector;
      break;
    case Product::sym_matmat:
      if (f.rank() == Rank::symmetric && g.rank() == Rank::symmetric) return Rank::symmetric;
      break;
    case Product::componentwise:
      if (f.rank() == g.rank()) return f.rank();
      break;
  }
  throw std::invalid_argument("dealiased_product: ranks incompatible with product kind");
}

}  // namespace

SpectralField dealiased_product(const SpectralField& f, const SpectralField& g, int retain,
                                Product kind) {
  if (f.grid_ptr() != g.grid_ptr()) throw std::invalid_argument("product of fields on different grids");
  f.grid().require_product(f.band(), g.band(), retain);
  const Rank rr = result_rank(f, g, kind);
  const PhysicalField pf = to_physical(f);
  const PhysicalField pg = to_physical(g);
  PhysicalField out(f.grid_ptr(), rr);
  const std::size_t np = pf.points();

  switch (kind) {
    case Product::scale: {
      const PhysicalField& s = f.rank() == Rank::scalar ? pf : pg;
      const PhysicalField& t = f.rank() == Rank::scalar ? pg : pf;
      for_each_index(np, [&](std::size_t p) {
        for (int c = 0; c < t.components(); ++c) out.at(c, p) = s.at(0, p) * t.at(c, p);
      });
      break;
    }
    case Product::componentwise:
      for_each_index(np, [&](std::size_t p) {
        for (int c = 0; c < pf.components(); ++c) out.at(c, p) = pf.at(c, p) * pg.at(c, p);
      });
      break;
    case Product::dot:
      for_each_index(np, [&](std::size_t p) {
        out.at(0, p) = pf.at(0, p) * pg.at(0, p) + pf.at(1, p) * pg.at(1, p) + pf.at(2, p) * pg.at(2, p);
      });
      break;
    case Product::cross:
      for_each_index(np, [&](std::size_t p) {
        out.at(0, p) = pf.at(1, p) * pg.at(2, p) - pf.at(2, p) * pg.at(1, p);
        out.at(1, p) = pf.at(2, p) * pg.at(0, p) - pf.at(0, p) * pg.at(2, p);
        out.at(2, p) = pf.at(0, p) * pg.at(1, p) - pf.at(1, p) * pg.at(0, p);
      });
      break;
    case Product::matvec:
      for_each_index(np, [&](std::size_t p) {
        for (int i = 0; i < 3; ++i) {
          double acc = 0.0;
          for (int j = 0; j < 3; ++j) acc += pf.at(sym_slot(i, j), p) * pg.at(j, p);
          out.at(i, p) = acc;
        }
      });
      break;
    case Product::sym_matmat:
      for_each_index(np, [&](std::size_t p) {
        for (int i = 0; i < 3; ++i)
          for (int j = i; j < 3; ++j) {
            double ab = 0.0, ba = 0.0;
            for (int l = 0; l < 3; ++l) {
              ab += pf.at(sym_slot(i, l), p) * pg.at(sym_slot(l, j), p);
              ba += pg.at(sym_slot(i, l), p) * pf.at(sym_slot(l, j), p);
            }
            out.at(sym_slot(i, j), p) = 0.5 * (ab + ba);
          }
      });
      break;
  }
  return to_spectral(out, rr, retain);
}

double quadrature(const PhysicalField& f, const PhysicalField& g) {
  if (f.components() != g.components()) throw std::invalid_argument("quadrature: component mismatch");
  double acc = 0.0;
  const std::size_t n = f.data().size();
  const auto a = f.data();
  const auto b = g.data();
#pragma omp parallel for reduction(+ : acc) schedule(static) if (default_exec() == Exec::parallel)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) acc += a[i] * b[i];
  return acc / static_cast<double>(f.points());
}

}  // namespace micropolar
