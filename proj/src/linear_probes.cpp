#include "bogl/linear_probes.hpp"

#include <cmath>
#include <optional>

#include "bogl/errors.hpp"
#include "bogl/parallel.hpp"
#include "bogl/random_fields.hpp"

namespace bogl {
namespace {

enum StreamId : std::uint64_t {
  kHomogeneous = 101,
  kDuhamelY = 102,
  kDuhamelX = 103,
  kLocalization = 104,
  kStrichartz = 105,
  kEmbedding = 106,
};

double sample_decay(std::size_t i) { return kSampleDecays[i % 3]; }

std::map<std::string, std::string> env_of(const LinearProbeConfig& c) {
  return {{"n", std::to_string(c.n)},
          {"lambda", format_double(c.lambda)},
          {"M", std::to_string(c.M)},
          {"T", format_double(c.T)},
          {"s", format_double(c.s)},
          {"kmax", std::to_string(c.kmax)},
          {"samples", std::to_string(c.samples)},
          {"seed", std::to_string(c.seed)}};
}

SpaceTimeGrid grid_of(const LinearProbeConfig& c) { return make_spacetime_grid(make_grid(c.n, c.lambda), c.M, c.T); }

template <class Fn>
ProbeReport run(const char* name, const char* anchor, const LinearProbeConfig& c, Fn&& sample) {
  std::vector<std::optional<ProbeRow>> rows(c.samples);
  parallel_for(c.samples, [&](std::size_t i) { rows[i] = sample(i); });
  return assemble_report(name, anchor, rows, env_of(c));
}

std::optional<ProbeRow> row(std::size_t i, double lhs, double rhs) {
  if (!(rhs > 0.0)) return std::nullopt;
  return ProbeRow{i, lhs, rhs, lhs / rhs, {}, {}, {}};
}

SpaceTimeField random_forcing(const SpaceTimeGrid& g, const LinearProbeConfig& c, std::uint64_t id, std::size_t i) {
  rng::Stream st(c.seed, id, i);
  SpaceTimeSpectrum sp;
  sp.decay_xi = sample_decay(i);
  sp.decay_sigma = 0.5;
  sp.kmax = c.kmax;
  sp.real = false;
  return random_spacetime(g, st, sp);
}

}  // namespace

cplx duhamel_i0(double h, double p) {
  const double x = h * p;
  if (std::abs(x) > 0.1) return (1.0 - std::polar(1.0, -x)) / cplx(0.0, p);
  cplx sum = 0.0, term = 1.0;
  for (int k = 0; k < 14; ++k) {
    sum += term / static_cast<double>(k + 1);
    term *= cplx(0.0, -x) / static_cast<double>(k + 1);
  }
  return h * sum;
}

cplx duhamel_i1(double h, double p) {
  const double x = h * p;
  if (std::abs(x) > 0.1) return (duhamel_i0(h, p) - h * std::polar(1.0, -x)) / cplx(0.0, p);
  cplx sum = 0.0, term = 1.0;
  for (int k = 0; k < 14; ++k) {
    sum += term / static_cast<double>(k + 2);
    term *= cplx(0.0, -x) / static_cast<double>(k + 1);
  }
  return h * h * sum;
}

std::vector<ComplexField> duhamel(const SpaceTimeField& g, std::size_t refine_factor) {
  if (refine_factor == 0) throw UsageError("Duhamel refinement must be >= 1");
  const auto& grid = g.grid();
  const std::size_t N = grid.spatial.size();
  const auto fine = refine(g, 1, refine_factor);
  const std::size_t MF = fine.grid().M;
  const double h = fine.grid().dt();

  // Spatial coefficients of g at every fine time node.
  const auto smp = fine.samples();
  std::vector<std::vector<cplx>> gk(MF);
  for (std::size_t m = 0; m < MF; ++m)
    gk[m] = ComplexField::from_samples(grid.spatial, std::span<const cplx>(smp.data() + m * N, N)).coeffs();

  std::vector<std::vector<cplx>> v(MF, std::vector<cplx>(N));
  const std::size_t centre = MF / 2;
  for (std::size_t k = 0; k < N; ++k) {
    const double xi = grid.spatial.xi(k);
    const double p = std::abs(xi) * xi;
    for (double dir : {1.0, -1.0}) {
      const double hs = dir * h;
      const cplx e = std::polar(1.0, -hs * p), i0 = duhamel_i0(hs, p), i1 = duhamel_i1(hs, p);
      std::size_t a = centre;
      for (;;) {
        const std::size_t b = dir > 0 ? a + 1 : a - 1;
        if (dir > 0 ? b >= MF : a == 0) break;
        v[b][k] = e * v[a][k] + gk[b][k] * i0 + (gk[a][k] - gk[b][k]) / hs * i1;
        a = b;
      }
    }
  }
  std::vector<ComplexField> out;
  out.reserve(grid.M);
  for (std::size_t m = 0; m < grid.M; ++m) out.emplace_back(grid.spatial, v[m * refine_factor]);
  return out;
}

ProbeReport homogeneous_probe(const LinearProbeConfig& c) {
  const auto g = grid_of(c);
  return run("homogeneous_linear", "homogeneous linear estimate (free group in Y^s)", c, [&](std::size_t i) {
    rng::Stream st(c.seed, kHomogeneous, i);
    Spectrum sp;
    sp.decay = sample_decay(i);
    sp.kmax = c.kmax;
    const auto f = to_complex(random_real(g.spatial, st, sp));
    std::vector<ComplexField> slices;
    for (std::size_t m = 0; m < g.M; ++m) slices.push_back(free_propagate(f, g.t(m) - 0.5 * g.T));
    const auto u = from_slices(g, slices, g.T);
    return row(i, y_norm(u, c.s), sobolev_norm(f, c.s));
  });
}

ProbeReport duhamel_y_probe(const LinearProbeConfig& c) {
  const auto g = grid_of(c);
  return run("duhamel_Y", "non-homogeneous linear estimate (Y^s form)", c, [&](std::size_t i) {
    const auto f = random_forcing(g, c, kDuhamelY, i);
    const auto v = from_slices(g, duhamel(f, c.duhamel_refine), g.T);
    return row(i, y_norm(v, c.s), x_norm(f, c.s, -0.5) + z_tilde_norm(f, c.s, -1.0));
  });
}

ProbeReport duhamel_x_probe(const LinearProbeConfig& c) {
  const auto g = grid_of(c);
  constexpr double d = 0.25;
  return run("duhamel_X", "non-homogeneous linear estimate (X^{s,1/2+d} form, d = 1/4)", c, [&](std::size_t i) {
    const auto f = random_forcing(g, c, kDuhamelX, i);
    const auto v = from_slices(g, duhamel(f, c.duhamel_refine), g.T);
    return row(i, x_norm(v, c.s, 0.5 + d), x_norm(f, c.s, -0.5 + d));
  });
}

ProbeReport time_localization_probe(const LinearProbeConfig& c) {
  constexpr double b1 = -0.25, b = 0.25;
  const auto sg = make_grid(c.n, c.lambda);
  return run("time_localization", "time localization in X^{s,b}_T (b' = -1/4, b = 1/4)", c, [&](std::size_t i) {
    rng::Stream st(c.seed, kLocalization, i);
    Spectrum sp;
    sp.decay = sample_decay(i);
    sp.kmax = c.kmax;
    const auto f = random_complex(sg, st, sp);
    std::vector<double> omega(sg.size());
    for (auto& w : omega) w = 2.0 * st.normal();
    double best = 0.0, best_lhs = 0.0, best_rhs = 0.0;
    for (double T : {1.0, 0.5, 0.25, 0.125}) {
      const auto g = make_spacetime_grid(sg, 128, 2 * T);
      std::vector<ComplexField> slices;
      for (std::size_t m = 0; m < g.M; ++m) {
        const double t = g.t(m) - T;
        auto cf = f.coeffs();
        for (std::size_t k = 0; k < sg.size(); ++k)
          cf[k] *= std::polar(1.0, -t * (std::abs(sg.xi(k)) * sg.xi(k) + omega[k]));
        slices.emplace_back(sg, std::move(cf));
      }
      const auto u = from_slices(g, slices, g.T);
      const double lhs = x_norm(u, c.s, b1), rhs = std::pow(T, b - b1) * x_norm(u, c.s, b);
      if (rhs > 0.0 && lhs / rhs > best) best = lhs / rhs, best_lhs = lhs, best_rhs = rhs;
    }
    return row(i, best_lhs, best_rhs);
  });
}

ProbeReport strichartz_probe(const LinearProbeConfig& c) {
  const auto g = grid_of(c);
  return run("strichartz_L4", "Bourgain-Strichartz L^4 bound by X^{0,3/8}", c, [&](std::size_t i) {
    const auto u = random_forcing(g, c, kStrichartz, i);
    return row(i, st_lebesgue(u, 4), x_norm(u, 0.0, 0.375));
  });
}

ProbeReport embedding_probe(const LinearProbeConfig& c) {
  const auto g = grid_of(c);
  return run("embedding_Z", "embedding Z^{s,0} into C_t H^s", c, [&](std::size_t i) {
    const auto u = random_forcing(g, c, kEmbedding, i);
    return row(i, sup_sobolev(u, c.s), z_norm(u, c.s, 0.0));
  });
}

std::vector<ProbeReport> linear_probes(const LinearProbeConfig& c) {
  return {homogeneous_probe(c),       duhamel_y_probe(c),  duhamel_x_probe(c),
          time_localization_probe(c), strichartz_probe(c), embedding_probe(c)};
}

}  // namespace bogl
