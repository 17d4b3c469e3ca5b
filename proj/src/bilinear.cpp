#include "bogl/bilinear.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <optional>

#include "bogl/errors.hpp"
#include "bogl/gauge.hpp"
#include "bogl/littlewood_paley.hpp"
#include "bogl/parallel.hpp"
#include "bogl/random_fields.hpp"

namespace bogl::bilinear {
namespace {

constexpr double kPi = std::numbers::pi;

double japanese(double x) { return 1.0 + std::abs(x); }

void require_same(const SpaceTimeField& a, const SpaceTimeField& b) {
  if (!(a.grid() == b.grid())) throw UsageError("space-time grids differ");
}

// Coefficient-wise map c(xi, tau) -> fn(xi, tau, c) over the whole grid.
template <class Fn>
SpaceTimeField map_coeffs(const SpaceTimeField& f, Fn&& fn) {
  const auto& g = f.grid();
  const std::size_t N = g.spatial.size();
  std::vector<cplx> c(g.size());
  for (std::size_t m = 0; m < g.M; ++m) {
    const double tau = g.tau(m);
    for (std::size_t k = 0; k < N; ++k) c[m * N + k] = fn(g.spatial.xi(k), tau, f.coeffs()[m * N + k]);
  }
  return SpaceTimeField(g, std::move(c));
}

// Exact product of two fields, truncated back to their grid.
SpaceTimeField exact_product(const SpaceTimeField& a, const SpaceTimeField& b) {
  return truncate(multiply(refine(a, 2, 2), refine(b, 2, 2)), a.grid());
}

bool integer_lattice(const SpaceTimeGrid& g) {
  return g.spatial.lambda() == 1.0 && std::abs(g.T - 2 * kPi) < 1e-12;
}

// Dyadic shells N = 2^k with phi_N(x) > 0. Off the unit lattice |xi2| can
// drop below 1, so k may be negative there.
std::vector<std::pair<double, double>> shell_weights(double x) {
  std::vector<std::pair<double, double>> out;
  if (x == 0.0) return out;
  const double start = std::min(1.0, std::exp2(std::floor(std::log2(std::abs(x))) - 1.0));
  for (double N = start; N <= 2.0 * std::abs(x) + 1.0; N *= 2.0) {
    const double w = lp::phi_N(x, N);
    if (w > 0.0) out.emplace_back(N, w);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- operators

SpaceTimeField inverse_derivative(const SpaceTimeField& w) {
  double peak = 0.0, low = 0.0;
  const auto& g = w.grid();
  const std::size_t N = g.spatial.size();
  for (std::size_t m = 0; m < g.M; ++m)
    for (std::size_t k = 0; k < N; ++k) {
      const double a = std::abs(w.coeffs()[m * N + k]);
      peak = std::max(peak, a);
      if (g.spatial.xi(k) < 1.0) low = std::max(low, a);
    }
  if (low > 1e-14 * peak) throw DomainError("d/dx^{-1} needs w supported at xi >= 1");
  return map_coeffs(w, [](double xi, double, cplx c) { return xi >= 1.0 ? c / cplx(0.0, xi) : cplx(0.0); });
}

SpaceTimeField gauge_product(const SpaceTimeField& W, const SpaceTimeField& u) {
  require_same(W, u);
  const auto ux = map_coeffs(u, [](double xi, double, cplx c) { return xi < 0.0 ? cplx(0.0, xi) * c : cplx(0.0); });
  return project(exact_product(W, ux), {Proj::plus_hi});
}

SpaceTimeField bilinear_B(const SpaceTimeField& w, const SpaceTimeField& u) {
  return apply(symbols::derivative(1), gauge_product(inverse_derivative(w), u));
}

cplx pairing(const SpaceTimeField& h, const SpaceTimeField& b) {
  require_same(h, b);
  cplx sum = 0.0;
  for (std::size_t i = 0; i < h.coeffs().size(); ++i) sum += h.coeffs()[i] * b.coeffs()[i];
  return sum;
}

cplx trilinear_I(const SpaceTimeField& h, const SpaceTimeField& w, const SpaceTimeField& u) {
  require_same(h, w);
  require_same(h, u);
  const auto a = map_coeffs(w, [](double xi, double, cplx c) { return xi >= 1.0 ? c / xi : cplx(0.0); });
  const auto b = map_coeffs(u, [](double xi, double, cplx c) { return xi < 0.0 ? xi * c : cplx(0.0); });
  const auto conv = exact_product(a, b);
  const auto& g = h.grid();
  const std::size_t N = g.spatial.size();
  cplx sum = 0.0;
  for (std::size_t m = 0; m < g.M; ++m) {
    const double tau = g.tau(m);
    for (std::size_t k = 0; k < N; ++k) {
      const double xi = g.spatial.xi(k);
      if (xi < 1.0) continue;
      sum += xi / std::sqrt(japanese(tau + xi * xi)) * h.coeffs()[m * N + k] * conv.coeffs()[m * N + k];
    }
  }
  return sum;
}

cplx trilinear_I_oracle(const SpaceTimeField& h, const SpaceTimeField& w, const SpaceTimeField& u) {
  require_same(h, w);
  require_same(h, u);
  const auto& g = h.grid();
  if (g.size() > kOracleMaxPoints) throw UsageError("grid too large for the quadruple-sum oracle");
  const long hn = static_cast<long>(g.spatial.size() / 2), hm = static_cast<long>(g.M / 2);
  const double lam = g.spatial.lambda(), dtau = 2 * kPi / g.T;
  cplx sum = 0.0;
  for (long j = -hn; j < hn; ++j) {
    const double xi = j / lam;
    if (xi < 1.0) continue;
    for (long m = -hm; m < hm; ++m) {
      const double tau = m * dtau;
      const cplx hv = h.coeff(j, m);
      for (long j1 = -hn; j1 < hn; ++j1) {
        const double xi1 = j1 / lam, xi2 = (j - j1) / lam;
        if (xi1 < 1.0 || xi2 > 0.0) continue;
        for (long m1 = -hm; m1 < hm; ++m1)
          sum += xi / std::sqrt(japanese(tau + xi * xi)) * hv * (w.coeff(j1, m1) / xi1) * xi2 * u.coeff(j - j1, m - m1);
      }
    }
  }
  return sum;
}

// ---------------------------------------------------------------- regions

bool in_domain(const FrequencyTuple& t) { return t.xi >= 1 && t.xi1 >= 1 && t.xi2() <= 0; }

long resonance_defect(const FrequencyTuple& t) { return t.sigma1() + t.sigma2() - t.sigma() + 2 * t.xi * t.xi2(); }

const char* region_name(Region r) {
  switch (r) {
    case Region::A: return "A";
    case Region::B: return "B";
    case Region::C: return "C";
    case Region::none: return "none";
  }
  return "?";
}

std::array<bool, 3> region_predicates(const FrequencyTuple& t, long N, long N2) {
  const long th = N * N2;
  const bool a = 6 * std::abs(t.sigma()) >= th;
  const bool b = 6 * std::abs(t.sigma1()) >= th && !a;
  const bool c = !a && 6 * std::abs(t.sigma1()) < th && 6 * std::abs(t.sigma2()) >= th;
  return {a, b, c};
}

namespace {
bool in_shell(double x, double N) { return std::abs(x) >= 0.5 * N && std::abs(x) <= 2.0 * N; }
bool dyadic(long N) { return N >= 1 && std::has_single_bit(static_cast<unsigned long>(N)); }
}  // namespace

Region classify(const FrequencyTuple& t, long N, long N2) {
  if (!in_domain(t)) throw DomainError("tuple lies outside D");
  if (!dyadic(N) || !dyadic(N2)) throw DomainError("shell sizes must be 2^k >= 1");
  if (!in_shell(static_cast<double>(t.xi), static_cast<double>(N)) ||
      !in_shell(static_cast<double>(t.xi2()), static_cast<double>(N2)))
    throw DomainError("frequency outside its dyadic shell");
  const auto p = region_predicates(t, N, N2);
  if (p[0]) return Region::A;
  if (p[1]) return Region::B;
  if (p[2]) return Region::C;
  return Region::none;
}

Region classify(double xi, double xi1, double tau, double tau1, double N, double N2) {
  const double xi2 = xi - xi1, tau2 = tau - tau1;
  if (!(xi >= 1.0 && xi1 >= 1.0 && xi2 <= 0.0)) throw DomainError("tuple lies outside D");
  if (!in_shell(xi, N) || !in_shell(xi2, N2)) throw DomainError("frequency outside its dyadic shell");
  const double th = N * N2 / 6.0;
  const double s = tau + xi * xi, s1 = tau1 + xi1 * xi1, s2 = tau2 - xi2 * xi2;
  if (std::abs(s) >= th) return Region::A;
  if (std::abs(s1) >= th) return Region::B;
  if (std::abs(s2) >= th) return Region::C;
  return Region::none;
}

RegionSplit split_I(const SpaceTimeField& h, const SpaceTimeField& w, const SpaceTimeField& u) {
  require_same(h, w);
  require_same(h, u);
  const auto& g = h.grid();
  const bool exact = integer_lattice(g);
  const long n = static_cast<long>(g.spatial.size()), hn = n / 2, hm = static_cast<long>(g.M / 2);
  const double lam = g.spatial.lambda(), dtau = 2 * kPi / g.T;

  struct Entry {
    long j, m;
    cplx c;
  };
  std::vector<Entry> ws, us;
  for (long j = -hn; j < hn; ++j)
    for (long m = -hm; m < hm; ++m) {
      if (j / lam >= 1.0 && w.coeff(j, m) != 0.0) ws.push_back({j, m, w.coeff(j, m) / (j / lam)});
      if (j < 0 && u.coeff(j, m) != 0.0) us.push_back({j, m, (j / lam) * u.coeff(j, m)});
    }
  std::vector<std::vector<std::pair<double, double>>> shells(n);
  for (long j = -hn; j < hn; ++j) shells[j + hn] = shell_weights(j / lam);

  RegionSplit out;
  for (const auto& a : ws)
    for (const auto& b : us) {
      const long j = a.j + b.j, m = a.m + b.m;
      if (j >= hn || m < -hm || m >= hm) continue;
      const double xi = j / lam;
      if (xi < 1.0) continue;
      const cplx hv = h.coeff(j, m);
      if (hv == 0.0) continue;
      const double tau = m * dtau;
      const cplx term = xi / std::sqrt(japanese(tau + xi * xi)) * hv * a.c * b.c;
      for (const auto& [N, wN] : shells[j + hn])
        for (const auto& [N2, wN2] : shells[b.j + hn]) {
          const Region r = exact ? classify(FrequencyTuple{j, a.j, m, a.m}, static_cast<long>(N), static_cast<long>(N2))
                                 : classify(xi, a.j / lam, tau, a.m * dtau, N, N2);
          const cplx v = wN * wN2 * term;
          switch (r) {
            case Region::A: out.A += v; break;
            case Region::B: out.B += v; break;
            case Region::C: out.C += v; break;
            case Region::none: throw NumericFailure("region split left a tuple unclassified");
          }
        }
    }
  return out;
}

// ---------------------------------------------------------------- probes

const char* estimate_name(Estimate e) {
  switch (e) {
    case Estimate::bilincrit_X: return "bilincrit_X";
    case Estimate::bilincrit_Ztilde: return "bilincrit_Ztilde";
    case Estimate::lemma3: return "lemma3";
    case Estimate::lemma2_leibniz: return "lemma2_leibniz";
    case Estimate::appendix_bilin: return "appendix_bilin";
    case Estimate::periodic_bilintore: return "periodic_bilintore";
  }
  return "?";
}

Estimate parse_estimate(const std::string& name) {
  for (auto e : kAllEstimates)
    if (name == estimate_name(e)) return e;
  throw UsageError("unknown estimate '" + name + "'");
}

namespace {

const char* anchor_of(Estimate e) {
  switch (e) {
    case Estimate::bilincrit_X: return "gauge bilinear estimate into X^{s,-1/2}";
    case Estimate::bilincrit_Ztilde: return "gauge bilinear estimate into Z~^{s,-1}";
    case Estimate::lemma3: return "low-frequency gauge term bounded by ||u||_{L^4}^2";
    case Estimate::lemma2_leibniz: return "frequency-localized fractional Leibniz rule";
    case Estimate::appendix_bilin: return "bilinear estimate for uniqueness (theta = 1/2 + delta)";
    case Estimate::periodic_bilintore: return "periodic bilinear estimate for uniqueness (s >= 1/4)";
  }
  return "";
}

double sample_decay(std::size_t i) {
  static constexpr double r[3] = {0.5, 1.0, 2.0};
  return r[i % 3];
}

SpaceTimeGrid probe_grid(const BilinearProbeConfig& c, std::size_t n, double lambda) {
  return make_spacetime_grid(make_grid(n, lambda), c.M, 2 * kPi);
}

SpaceTimeField random_positive(const SpaceTimeGrid& g, rng::Stream& st, double r, double beta, long kmax) {
  SpaceTimeSpectrum sp;
  sp.decay_xi = r;
  sp.decay_sigma = beta;
  sp.kmax = kmax;
  sp.real = false;
  sp.positive_only = true;
  return random_spacetime(g, st, sp);
}

SpaceTimeField random_real_st(const SpaceTimeGrid& g, rng::Stream& st, double r, double beta, long kmax,
                              bool mean_zero = false) {
  SpaceTimeSpectrum sp;
  sp.decay_xi = r;
  sp.decay_sigma = beta;
  sp.kmax = kmax;
  auto f = random_spacetime(g, st, sp);
  if (mean_zero) f = map_coeffs(f, [](double xi, double, cplx c) { return xi == 0.0 ? cplx(0.0) : c; });
  return f;
}

SpaceTimeField bessel_st(const SpaceTimeField& f, double s) { return apply(symbols::bessel(s), f); }

// ||u||_{L^2} + ||u||_{L^4} + ||u||_{X^{a,b}}.
double u_factor(const SpaceTimeField& u, double a, double b) {
  return st_lebesgue(u, 2) + st_lebesgue(u, 4) + x_norm(u, a, b);
}

// Norming element for X^{s,b}: sum h . f = ||f||_{X^{s,b}}.
SpaceTimeField norming_x(const SpaceTimeField& f, double s, double b, double norm) {
  const double LT = f.grid().measure();
  return map_coeffs(f, [&](double xi, double tau, cplx c) {
    return LT * std::conj(c) * std::pow(japanese(tau + std::abs(xi) * xi), 2 * b) * std::pow(japanese(xi), 2 * s) /
           norm;
  });
}

// Norming element for Z^{s,b}.
SpaceTimeField norming_z(const SpaceTimeField& f, double s, double b, double norm) {
  const auto& g = f.grid();
  const std::size_t N = g.spatial.size();
  std::vector<double> S(N, 0.0);
  for (std::size_t m = 0; m < g.M; ++m)
    for (std::size_t k = 0; k < N; ++k) {
      const double xi = g.spatial.xi(k);
      S[k] += std::pow(japanese(g.tau(m) + std::abs(xi) * xi), b) * std::pow(japanese(xi), s) *
              std::abs(f.coeffs()[m * N + k]);
    }
  std::vector<cplx> c(g.size());
  for (std::size_t m = 0; m < g.M; ++m)
    for (std::size_t k = 0; k < N; ++k) {
      const cplx v = f.coeffs()[m * N + k];
      if (v == 0.0) continue;
      const double xi = g.spatial.xi(k);
      c[m * N + k] = g.measure() * S[k] / norm * std::pow(japanese(g.tau(m) + std::abs(xi) * xi), b) *
                     std::pow(japanese(xi), s) * std::conj(v) / std::abs(v);
    }
  return SpaceTimeField(g, std::move(c));
}

struct Sample {
  std::optional<ProbeRow> row;
  double pairing = 0.0;
};

Sample bilincrit_sample(bool ztilde, const BilinearProbeConfig& c, std::size_t i) {
  const auto g = probe_grid(c, c.n, c.lambda);
  rng::Stream st(c.seed, 200 + (ztilde ? 1 : 0), i);
  const double r = sample_decay(i);
  const auto w = random_positive(g, st, r, 0.5, c.kmax);
  const auto u = random_real_st(g, st, r, 0.5, c.kmax);
  const auto B = bilinear_B(w, u);
  const double rhs = x_norm(w, c.s, 0.5) * u_factor(u, -1.0, 1.0);
  if (!(rhs > 0.0)) return {};
  const double lhs = ztilde ? z_tilde_norm(B, c.s, -1.0) : x_norm(B, c.s, -0.5);
  const double dual = ztilde ? z_norm(B, c.s, -1.0) : lhs;
  ProbeRow row{i, lhs, rhs, lhs / rhs, 0.0, 0.0, 0.0};
  if (dual > 0.0) {
    const auto h = ztilde ? norming_z(B, c.s, -1.0, dual) : norming_x(B, c.s, -0.5, dual);
    const auto ht = map_coeffs(h, [](double xi, double tau, cplx v) {
      return std::sqrt(japanese(tau + std::abs(xi) * xi)) * (1.0 - lp::eta(xi)) * v;
    });
    const auto split = split_I(ht, w, u);
    const cplx I = cplx(0.0, 1.0);
    row.region_A = (I * split.A).real();
    row.region_B = (I * split.B).real();
    row.region_C = (I * split.C).real();
  }
  return {row, dual};
}

// d/dx P+hi(P_lo e^{-iF/2} P- d/dx u), products on a grid doubled in x and t.
SpaceTimeField lemma3_operator(const SpaceTimeField& u) {
  const auto& g = u.grid();
  const auto fine = refine(u, 2, 2);
  const auto& fg = fine.grid();
  const std::size_t NF = fg.spatial.size();
  const auto smp = fine.samples();
  std::vector<cplx> G(smp.size());
  for (std::size_t m = 0; m < fg.M; ++m) {
    std::vector<double> row(NF);
    for (std::size_t k = 0; k < NF; ++k) row[k] = smp[m * NF + k].real();
    const auto F = gauge::primitive(RealField::from_samples(fg.spatial, std::span<const double>(row)));
    const auto e = map_samples(F, [](double x) { return std::polar(1.0, -0.5 * x); });
    const auto lo = project(e, {Proj::lo}).samples();
    std::copy(lo.begin(), lo.end(), G.begin() + static_cast<std::ptrdiff_t>(m * NF));
  }
  const auto ux = map_coeffs(fine, [](double xi, double, cplx c) { return xi < 0.0 ? cplx(0.0, xi) * c : cplx(0.0); });
  auto prod = ux.samples();
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] *= G[i];
  const auto out = project(SpaceTimeField::from_samples(fg, prod), {Proj::plus_hi});
  return truncate(apply(symbols::derivative(1), out), g);
}

Sample lemma3_sample(const BilinearProbeConfig& c, std::size_t i) {
  // The operator vanishes when lambda = 1: P_lo keeps |xi| < 2 and the output
  // must reach xi > 1 from xi2 <= -1.
  const double lambda = 4.0 * c.lambda;
  const auto g = probe_grid(c, 2 * c.n, lambda);
  rng::Stream st(c.seed, 202, i);
  const auto u = random_real_st(g, st, sample_decay(i), 0.5, 4 * c.kmax, true);
  const double rhs = std::pow(st_lebesgue(u, 4), 2);
  const auto out = lemma3_operator(u);
  const double lhs = z_tilde_norm(out, c.s, -1.0) + x_norm(out, c.s, -0.5);
  if (!(rhs > 0.0)) return {};
  return {ProbeRow{i, lhs, rhs, lhs / rhs, {}, {}, {}}, 0.0};
}

Sample leibniz_sample(const BilinearProbeConfig& c, std::size_t i) {
  const double alpha = c.s;
  if (alpha < 0.0 || alpha > 1.0) throw DomainError("Leibniz probe needs 0 <= s <= 1");
  const double a1 = 0.5 * (1.0 + alpha);
  const auto g = make_grid(c.n, c.lambda);
  rng::Stream st(c.seed, 203, i);
  Spectrum sp;
  sp.decay = sample_decay(i);
  sp.kmax = c.kmax;
  const auto f = random_complex(g, st, sp);
  const auto u = random_real(g, st, sp);
  const auto ux = project(derivative(u), {Proj::minus});
  const auto prod = truncate(multiply(refine(f, 2), refine(ux, 2)), g);
  const double lhs = lebesgue_norm(fractional(project(prod, {Proj::plus}), Potential::riesz, alpha), 2);
  auto l4 = [](const ComplexField& v) { return lebesgue_norm(refine(v, 2), 4); };
  const double rhs = l4(fractional(f, Potential::riesz, a1)) * l4(fractional(to_complex(u), Potential::riesz, a1));
  if (!(rhs > 0.0)) return {};
  return {ProbeRow{i, lhs, rhs, lhs / rhs, {}, {}, {}}, 0.0};
}

Sample gauge_product_sample(Estimate e, const BilinearProbeConfig& c, std::size_t i) {
  const bool periodic = e == Estimate::periodic_bilintore;
  const double s = c.s;
  if (periodic && s < 0.25) throw DomainError("periodic bilinear estimate needs s >= 1/4");
  if (!periodic && !(s > 0.0)) throw DomainError("appendix bilinear estimate needs s > 0");
  const double delta = s / 20.0, theta = 0.5 + delta;
  const auto g = probe_grid(c, c.n, c.lambda);
  rng::Stream st(c.seed, periodic ? 205 : 204, i);
  const double r = sample_decay(i);
  const auto W = random_positive(g, st, r, 0.5, c.kmax);
  const auto u = random_real_st(g, st, r, 0.5, c.kmax);
  const auto out = gauge_product(W, u);
  const auto Ju = bessel_st(u, s);
  double lhs, rhs;
  if (periodic) {
    lhs = x_norm(out, s + 0.5, -0.5);
    rhs = x_norm(W, s + 0.5, 0.5) * (st_lebesgue(Ju, 2) + st_lebesgue(Ju, 4) + x_norm(u, s - 1.0, 1.0));
  } else {
    lhs = x_norm(out, 0.5, -0.5 + 2 * delta);
    rhs = x_norm(W, 0.5, 0.5 + delta) * (st_lebesgue(Ju, 2) + st_lebesgue(Ju, 4) + x_norm(u, s - theta, theta));
  }
  if (!(rhs > 0.0)) return {};
  return {ProbeRow{i, lhs, rhs, lhs / rhs, {}, {}, {}}, 0.0};
}

std::map<std::string, std::string> env_of(const BilinearProbeConfig& c) {
  return {{"s", format_double(c.s)},          {"samples", std::to_string(c.samples)},
          {"seed", std::to_string(c.seed)},   {"n", std::to_string(c.n)},
          {"M", std::to_string(c.M)},         {"lambda", format_double(c.lambda)},
          {"kmax", std::to_string(c.kmax)}};
}

}  // namespace

ProbeReport estimate_probe(Estimate which, const BilinearProbeConfig& c, std::vector<double>* pairings) {
  // Parameter checks up front so they surface as errors, not skips.
  if (which == Estimate::periodic_bilintore && c.s < 0.25) throw DomainError("periodic bilinear estimate needs s >= 1/4");
  if (which == Estimate::appendix_bilin && !(c.s > 0.0)) throw DomainError("appendix bilinear estimate needs s > 0");
  if (which == Estimate::lemma2_leibniz && (c.s < 0.0 || c.s > 1.0)) throw DomainError("Leibniz probe needs 0 <= s <= 1");
  if (c.s < 0.0) throw DomainError("bilinear probes need s >= 0");

  std::vector<Sample> samples(c.samples);
  parallel_for(c.samples, [&](std::size_t i) {
    switch (which) {
      case Estimate::bilincrit_X: samples[i] = bilincrit_sample(false, c, i); break;
      case Estimate::bilincrit_Ztilde: samples[i] = bilincrit_sample(true, c, i); break;
      case Estimate::lemma3: samples[i] = lemma3_sample(c, i); break;
      case Estimate::lemma2_leibniz: samples[i] = leibniz_sample(c, i); break;
      case Estimate::appendix_bilin:
      case Estimate::periodic_bilintore: samples[i] = gauge_product_sample(which, c, i); break;
    }
  });
  std::vector<std::optional<ProbeRow>> rows;
  rows.reserve(samples.size());
  if (pairings) pairings->clear();
  for (const auto& s : samples) {
    rows.push_back(s.row);
    if (pairings && s.row && s.row->rhs > 0.0) pairings->push_back(s.pairing);
  }
  return assemble_report(estimate_name(which), anchor_of(which), rows, env_of(c));
}

ProbeReport exp_multiplication_probe(const BilinearProbeConfig& c) {
  const double alpha = std::clamp(c.s, 0.0, 0.25);
  const auto g = make_grid(c.n, c.lambda);
  std::vector<std::optional<ProbeRow>> rows(c.samples);
  parallel_for(c.samples, [&](std::size_t i) {
    rng::Stream st(c.seed, 210, i);
    Spectrum sp;
    sp.decay = sample_decay(i);
    sp.kmax = c.kmax;
    sp.mean_zero = true;
    const auto u = random_real(g, st, sp);
    sp.mean_zero = false;
    const auto h = random_complex(g, st, sp);
    const double ratio = gauge::exp_multiplication_ratio(u, h, alpha, 4);
    const double rhs = (1.0 + sobolev_norm(u, 0.0)) *
                       lebesgue_norm(fractional(refine(h, 4), Potential::bessel, alpha), 4);
    if (rhs > 0.0) rows[i] = ProbeRow{i, ratio * rhs, rhs, ratio, {}, {}, {}};
  });
  auto env = env_of(c);
  env["alpha"] = format_double(alpha);
  env["q"] = "4";
  return assemble_report("exp_multiplication", "multiplication by e^{-iF/2} in W^{a,q}", rows, std::move(env));
}

}  // namespace bogl::bilinear
