#include <map>
#include <stdexcept>
#include <tuple>

#include "micropolar/diagnostics.hpp"
#include "micropolar/execution.hpp"
#include "micropolar/pointwise.hpp"

namespace micropolar {

namespace {

enum class Fld { u, theta, K, a };

using Key = std::tuple<int, int, int, int, int>;

/// Physical samples of d^beta of a field, built on demand from the time levels.
class Sampler {
 public:
  explicit Sampler(const Levels& levels) : levels_(levels) {}

  const PhysicalField& operator()(Fld f, const SpaceTimeIndex& b) {
    const Key key{static_cast<int>(f), b.t, b.x[0], b.x[1], b.x[2]};
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    if (b.t >= static_cast<int>(levels_.size()))
      throw std::invalid_argument("interaction terms need time level " + std::to_string(b.t));
    const State& s = levels_[static_cast<std::size_t>(b.t)];
    SpectralField src;
    switch (f) {
      case Fld::u: src = s.u; break;
      case Fld::theta: src = s.theta; break;
      case Fld::K: src = s.K; break;
      case Fld::a: src = s.a(); break;
    }
    return cache_.emplace(key, to_physical(derivative(src, b.x))).first->second;
  }

 private:
  const Levels& levels_;
  std::map<Key, PhysicalField> cache_;
};

std::vector<SpaceTimeIndex> sub_indices(const SpaceTimeIndex& a) {
  std::vector<SpaceTimeIndex> out;
  for (int t = 0; t <= a.t; ++t)
    for (int i = 0; i <= a.x[0]; ++i)
      for (int j = 0; j <= a.x[1]; ++j)
        for (int k = 0; k <= a.x[2]; ++k) out.push_back({t, {i, j, k}});
  return out;
}

SpaceTimeIndex minus(const SpaceTimeIndex& a, const SpaceTimeIndex& b) {
  return {a.t - b.t, {a.x[0] - b.x[0], a.x[1] - b.x[1], a.x[2] - b.x[2]}};
}

SpaceTimeIndex shift_x(SpaceTimeIndex a, int axis) {
  ++a.x[static_cast<std::size_t>(axis)];
  return a;
}

SpaceTimeIndex shift_t(SpaceTimeIndex a) {
  ++a.t;
  return a;
}

double choose(const SpaceTimeIndex& a, const SpaceTimeIndex& b) {
  return binom(a.t, b.t) * binom(a.x[0], b.x[0]) * binom(a.x[1], b.x[1]) * binom(a.x[2], b.x[2]);
}

bool is_zero(const SpaceTimeIndex& a) { return a == SpaceTimeIndex{}; }

void add_vec(PhysicalField& f, std::size_t p, const Vec3& v) {
  for (int i = 0; i < 3; ++i) f.at(i, p) += v(i);
}

void add_planar(PhysicalField& f, std::size_t p, const Vec2& v) {
  f.at(0, p) += v(0);
  f.at(1, p) += v(1);
}

}  // namespace

std::vector<Interaction> interaction_terms(const Levels& levels, const PhysParams& params,
                                           const std::vector<SpaceTimeIndex>& alphas) {
  if (levels.empty()) throw std::invalid_argument("interaction terms need at least one level");
  Sampler s(levels);
  const GridPtr& gp = levels.front().u.grid_ptr();
  const std::size_t np = levels.front().grid().physical_size();
  const Mat3 jeq = equilibrium_inertia(params);
  const Vec3 weq = equilibrium_spin(params);
  const double cw = params.a_weight();

  std::vector<Interaction> out;
  out.reserve(alphas.size());
  for (const SpaceTimeIndex& al : alphas) {
    PhysicalField c1(gp, Rank::vector), c2(gp, Rank::vector), c3(gp, Rank::vector), c4(gp, Rank::vector),
        c5(gp, Rank::vector), c6(gp, Rank::planar), c7(gp, Rank::planar), c8(gp, Rank::planar);
    const auto subs = sub_indices(al);

    for (const SpaceTimeIndex& be : subs) {
      const double cb = choose(al, be);
      const SpaceTimeIndex rest = minus(al, be);
      const PhysicalField& kb = s(Fld::K, be);
      const PhysicalField& thb = s(Fld::theta, be);
      const PhysicalField& th_rest = s(Fld::theta, rest);

      // (K_bar - K33 I) theta_bar^perp, every split
      for_each_index(np, [&](std::size_t p) {
        const Mat3 k = sym_at(kb, p);
        const Vec3 t = vec_at(th_rest, p);
        const Vec2 tp = perp(Vec2{t(0), t(1)});
        add_planar(c8, p, cb * Vec2{(k(0, 0) - k(2, 2)) * tp(0) + k(0, 1) * tp(1),
                                    k(1, 0) * tp(0) + (k(1, 1) - k(2, 2)) * tp(1)});
      });
      if (is_zero(be)) continue;

      const PhysicalField& ub = s(Fld::u, be);
      const PhysicalField& a_rest = s(Fld::a, rest);
      const PhysicalField& th_rest_t = s(Fld::theta, shift_t(rest));
      const PhysicalField* gu[3];
      const PhysicalField* ga[3];
      for (int b = 0; b < 3; ++b) {
        gu[b] = &s(Fld::u, shift_x(rest, b));
        ga[b] = &s(Fld::a, shift_x(rest, b));
      }
      for_each_index(np, [&](std::size_t p) {
        const Vec3 u = vec_at(ub, p);
        Vec3 adv = Vec3::Zero();
        Vec2 adv_a = Vec2::Zero();
        for (int b = 0; b < 3; ++b) {
          adv += u(b) * vec_at(*gu[b], p);
          adv_a += u(b) * planar_at(*ga[b], p);
        }
        add_vec(c1, p, -cb * adv);
        add_planar(c6, p, -cb * adv_a);
        const Mat3 k = sym_at(kb, p);
        add_vec(c2, p, -cb * (k * vec_at(th_rest_t, p)));
        add_vec(c5, p, -cb * (k * weq).cross(vec_at(th_rest, p)));
        add_planar(c7, p, cb * thb.at(2, p) * perp(planar_at(a_rest, p)));
      });
    }

    // three-way splits: J (u.grad) theta and (omega x J) theta
    for (const SpaceTimeIndex& be : subs) {
      const SpaceTimeIndex r1 = minus(al, be);
      const PhysicalField& kb = s(Fld::K, be);
      const PhysicalField& thb = s(Fld::theta, be);
      for (const SpaceTimeIndex& ga : sub_indices(r1)) {
        if (is_zero(be) && is_zero(ga)) continue;
        const double cm = choose(al, be) * choose(r1, ga);
        const SpaceTimeIndex de = minus(r1, ga);
        const PhysicalField& ug = s(Fld::u, ga);
        const PhysicalField& kg = s(Fld::K, ga);
        const PhysicalField& thd = s(Fld::theta, de);
        const PhysicalField* gth[3];
        for (int b = 0; b < 3; ++b) gth[b] = &s(Fld::theta, shift_x(de, b));
        const bool b0 = is_zero(be), g0 = is_zero(ga);
        for_each_index(np, [&](std::size_t p) {
          const Mat3 jb = b0 ? Mat3(jeq + sym_at(kb, p)) : sym_at(kb, p);
          const Mat3 jg = g0 ? Mat3(jeq + sym_at(kg, p)) : sym_at(kg, p);
          const Vec3 wb = b0 ? Vec3(weq + vec_at(thb, p)) : vec_at(thb, p);
          const Vec3 u = vec_at(ug, p);
          Vec3 adv = Vec3::Zero();
          for (int b = 0; b < 3; ++b) adv += u(b) * vec_at(*gth[b], p);
          add_vec(c3, p, -cm * (jb * adv));
          add_vec(c4, p, -cm * wb.cross(jg * vec_at(thd, p)));
        });
      }
    }

    Interaction it;
    it.alpha = al;
    const PhysicalField& ua = s(Fld::u, al);
    const PhysicalField& ta = s(Fld::theta, al);
    const PhysicalField& aa = s(Fld::a, al);
    it.terms = {quadrature(c1, ua),      quadrature(c2, ta),      quadrature(c3, ta),
                quadrature(c4, ta),      -quadrature(c5, ta),     cw * quadrature(c6, aa),
                cw * quadrature(c7, aa), cw * quadrature(c8, aa)};
    for (double v : it.terms) it.total += v;
    out.push_back(it);
  }
  return out;
}

std::vector<AlphaBalance> alpha_balances(const Levels& levels, const PhysParams& params,
                                         const std::vector<SpaceTimeIndex>& alphas) {
  const std::vector<Interaction> inter = interaction_terms(levels, params, alphas);
  Sampler s(levels);
  const std::size_t np = levels.front().grid().physical_size();
  const Mat3 jeq = equilibrium_inertia(params);
  const double cw = params.a_weight();
  const SpaceTimeIndex zero{};
  const PhysicalField& k0 = s(Fld::K, zero);
  const PhysicalField& kt = s(Fld::K, shift_t(zero));

  std::vector<AlphaBalance> out;
  out.reserve(alphas.size());
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const SpaceTimeIndex& al = alphas[i];
    const SpaceTimeIndex alt = shift_t(al);
    const PhysicalField& ua = s(Fld::u, al);
    const PhysicalField& ta = s(Fld::theta, al);
    const PhysicalField& aa = s(Fld::a, al);
    const PhysicalField& tt = s(Fld::theta, alt);
    PhysicalField jt(levels.front().u.grid_ptr(), 3);  // J theta . theta, J theta_t . theta, K_t theta . theta
    for_each_index(np, [&](std::size_t p) {
      const Mat3 j = jeq + sym_at(k0, p);
      const Vec3 th = vec_at(ta, p);
      jt.at(0, p) = th.dot(j * th);
      jt.at(1, p) = th.dot(j * vec_at(tt, p));
      jt.at(2, p) = th.dot(sym_at(kt, p) * th);
    });
    auto mean = [&](int c) {
      double acc = 0.0;
      for (double v : jt.component(c)) acc += v;
      return acc / static_cast<double>(np);
    };
    AlphaBalance b;
    b.alpha = al;
    b.energy = 0.5 * quadrature(ua, ua) + 0.5 * mean(0) + 0.5 * cw * quadrature(aa, aa);
    b.rate = quadrature(ua, s(Fld::u, alt)) + mean(1) + 0.5 * mean(2) + cw * quadrature(aa, s(Fld::a, alt));
    const State& lv = levels[static_cast<std::size_t>(al.t)];
    b.dissipation = dissipation(derivative(lv.u, al.x), derivative(lv.theta, al.x), params);
    b.interaction = inter[i];
    out.push_back(b);
  }
  return out;
}

}  // namespace micropolar
