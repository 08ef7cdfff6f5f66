#include "gdl/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include <fftw3.h>

#include "gdl/quadrature.hpp"
#include "gdl/specfun.hpp"

namespace gdl::transforms {

namespace {

constexpr int kOrder = 16;
// Phase advance per 16-point panel at the highest resolved frequency.
constexpr double kPanelPhase = 8.0;
constexpr double kCutoffRelTol = 1e-14;
constexpr double kCutoffPower = 0.0;
constexpr double kTableStep = 1e-3;

std::mutex& fftw_plan_mutex() {
  static std::mutex m;
  return m;
}

SampledCosine sample_cosine(const std::function<double(double)>& v, double lo, double hi, double feature,
                            double power, double rel_tol) {
  double h_target = feature / 16.0;
  for (;;) {
    std::size_t n = 1024;
    while (n * h_target * kTableStep < 2.0 * kPi) n *= 2;
    if (n > (std::size_t{1} << 25)) throw ConvergenceError("transforms: cosine transform decays too slowly");
    const double h = 2.0 * kPi / (static_cast<double>(n) * kTableStep);
    const std::size_t samples = static_cast<std::size_t>(std::floor((hi - lo) / h)) + 1;
    SampledCosine out;
    out.h = h;
    std::vector<double> in0(n, 0.0), in1(n, 0.0);
    for (std::size_t j = 0; j < samples; ++j) {
      const double y = lo + static_cast<double>(j) * h;
      const double wv = (j == 0 ? 0.5 : 1.0) * h * v(y);
      if (wv == 0.0) continue;
      out.y.push_back(y);
      out.wv.push_back(wv);
      out.l1 += std::abs(wv);
      in0[j] = wv;
      in1[j] = wv * y;
    }
    const std::size_t m_count = n / 2 + 1;
    std::vector<fftw_complex> f0(m_count), f1(m_count);
    fftw_plan p0, p1;
    {
      std::lock_guard<std::mutex> lock(fftw_plan_mutex());
      p0 = fftw_plan_dft_r2c_1d(static_cast<int>(n), in0.data(), f0.data(), FFTW_ESTIMATE);
      p1 = fftw_plan_dft_r2c_1d(static_cast<int>(n), in1.data(), f1.data(), FFTW_ESTIMATE);
    }
    fftw_execute(p0);
    fftw_execute(p1);
    {
      std::lock_guard<std::mutex> lock(fftw_plan_mutex());
      fftw_destroy_plan(p0);
      fftw_destroy_plan(p1);
    }
    // sum_j wv_j e^{i t_m y_j} = e^{i t_m lo} conj(F[m])
    std::vector<double> c(m_count), d(m_count);
    double last = 0.0;
    for (std::size_t m = 0; m < m_count; ++m) {
      const double t = static_cast<double>(m) * kTableStep;
      const cplx ph = std::polar(1.0, t * lo);
      const cplx s0 = ph * cplx(f0[m][0], -f0[m][1]);
      const cplx s1 = ph * cplx(f1[m][0], -f1[m][1]);
      c[m] = s0.real();
      d[m] = -s1.imag();
      if (std::abs(c[m]) * std::pow(1.0 + t, power) > rel_tol * out.l1) last = t;
    }
    const double nyquist = kPi / h;
    if (last < 0.5 * nyquist) {
      out.t_cut = last + kTableStep;
      const std::size_t keep = std::min(m_count, static_cast<std::size_t>(out.t_cut / kTableStep) + 3);
      c.resize(keep);
      d.resize(keep);
      out.table = CosineTable(std::move(c), std::move(d), kTableStep);
      return out;
    }
    h_target /= 2.0;
  }
}

double min_segment(const std::vector<double>& br) {
  double best = br.back() - br.front();
  for (std::size_t i = 0; i + 1 < br.size(); ++i)
    if (br[i + 1] > br[i]) best = std::min(best, br[i + 1] - br[i]);
  return best;
}

}  // namespace

std::shared_ptr<const SampledCosine> window_cosine(const WindowSpec& w) {
  if (!w.compact()) throw DomainError("transforms: window must be compactly supported");
  static std::mutex m;
  static std::map<std::string, std::shared_ptr<const SampledCosine>> cache;
  const std::string key = w.to_string();
  {
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto entry = std::make_shared<const SampledCosine>(sample_cosine([w](double y) { return window_eval(w, y); },
                                                                   w.lower(), w.upper(), min_segment(w.breakpoints()),
                                                                   kCutoffPower, kCutoffRelTol));
  std::lock_guard<std::mutex> lock(m);
  return cache.emplace(key, entry).first->second;
}

double SampledCosine::cutoff(double rel) const {
  const auto& v = table.values();
  for (std::size_t i = v.size(); i-- > 0;)
    if (std::abs(v[i]) > rel * l1) return std::min(t_cut, static_cast<double>(i + 1) * table.step());
  return 0.0;
}

namespace {

struct Node {
  double x;
  double w;
};

void add_panels(std::vector<Node>& out, double a, double b, double width) {
  if (b <= a) return;
  const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / width)));
  const auto& r = quad::gauss_legendre(kOrder);
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double c = a + (p + 0.5) * h;
    for (int j = 0; j < kOrder; ++j) out.push_back({c + h / 2.0 * r.nodes[j], r.weights[j] * h / 2.0});
  }
}

// Nodes for int_0^{x_max}: x = e^{-u} on (0, 1], where the integrand behaves
// like x^{exponent + i log_freq}, then panels in x sized by the local frequency.
std::vector<Node> bessel_nodes(double x_max, double window_freq, double r, double exponent, double log_freq) {
  std::vector<Node> nodes;
  const double u_max = 37.0 / std::max(exponent, 0.25);
  const double width = std::min(0.5, 6.0 / (log_freq + 1.0));
  std::vector<Node> u_nodes;
  add_panels(u_nodes, 0.0, u_max, width);
  for (auto it = u_nodes.rbegin(); it != u_nodes.rend(); ++it) {
    const double x = std::exp(-it->x);
    nodes.push_back({x, it->w * x});
  }
  double x = 1.0;
  while (x < x_max) {
    const double freq = std::sqrt(1.0 + 4.0 * r * r / (x * x)) + window_freq;
    const double width = std::min(1.0, kPanelPhase / freq);
    const double next = std::min(x_max, x + width);
    add_panels(nodes, x, next, width);
    x = next;
  }
  return nodes;
}

cplx f_from_table(const SampledCosine& wc, cplx s, int l, double x) {
  const double t = x / (2.0 * l);
  if (t > wc.t_cut) return 0.0;
  return 2.0 / std::sqrt(kPi) * std::exp(s * std::log(x / (4.0 * l))) * wc.table(t);
}

void check_common(const WindowSpec& w, int l) {
  w.validate();
  if (l < 1) throw DomainError("transforms: l must be >= 1");
  if (!w.compact()) throw DomainError("transforms: window must be compactly supported");
}

cplx sin_pi(cplx z) { return std::sin(kPi * z); }

// --- g ----------------------------------------------------------------------

EvalResult g_integral(const WindowSpec& w, cplx s, int l, int k) {
  const auto wc = window_cosine(w);
  const double x_max = 2.0 * l * wc->t_cut;
  const auto nodes = bessel_nodes(x_max, w.upper() / (2.0 * l), 0.0, s.real() + 2.0 * k - 1.0, std::abs(s.imag()));
  std::vector<double> xs(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) xs[i] = nodes[i].x;
  const auto j = specfun::bessel_j_sweep(cplx(2.0 * k - 1.0, 0.0), xs);
  CompensatedSum<cplx> acc;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    acc += nodes[i].w * j[i].real() * f_from_table(*wc, s, l, xs[i]) / xs[i];
  const double sign = (k % 2) ? -1.0 : 1.0;
  const cplx v = kPi * sign * acc.value();
  return {v, 1e-10 * wc->l1, static_cast<long>(nodes.size()), "bessel-integral"};
}

EvalResult g_hypergeometric(const WindowSpec& w, cplx s, int l, int k) {
  const double two_l = 2.0 * l;
  const double a1 = w.lower(), a2 = w.upper();
  const double scale = 1e-13 * window_moment0(w).real();
  const cplx ga = s / 2.0 + static_cast<double>(k) - 0.5;  // k + s/2 - 1/2
  CompensatedSum<cplx> total;
  double err = 0.0;
  long evals = 0;
  if (a2 > two_l) {
    const cplx b = s / 2.0 + static_cast<double>(k);
    const cplx pre = std::pow(two_l, -0.0) * sin_pi(s / 2.0) *
                     std::exp(specfun::log_gamma(ga).value + specfun::log_gamma(b).value -
                              specfun::log_gamma(2.0 * k).value);
    auto integrand = [&](double x, double da, double) -> cplx {
      const double om = window_eval(w, x);
      if (om == 0.0) return 0.0;
      const double z = two_l * two_l / (x * x);
      const double lo = std::max(a1, two_l);
      const double wz = lo == two_l ? da * (x + two_l) / (x * x) : 1.0 - z;
      return om * std::pow(two_l / x, 2.0 * k - 1.0) * std::exp(-s * std::log(x)) *
             specfun::hyp2f1(ga, b, 2.0 * k, z, wz).value;
    };
    const auto r = quad::tanh_sinh<cplx>(integrand, std::max(a1, two_l), a2, scale / std::max(std::abs(pre), 1e-300), 1e-13);
    total += pre * r.value;
    err += std::abs(pre) * r.err;
    evals += r.evals;
  }
  if (a1 < two_l) {
    const cplx b = 0.5 + s / 2.0 - static_cast<double>(k);
    // cos(pi s/2) Gamma(1/2 + s/2 - k) = (-1)^k pi / Gamma(1/2 - s/2 + k)
    const double sign = (k % 2) ? -1.0 : 1.0;
    const cplx pre = sign * std::sqrt(kPi) * std::exp(-s * std::log(two_l)) *
                     std::exp(specfun::log_gamma(ga).value) * specfun::rgamma(static_cast<double>(k) + 0.5 - s / 2.0);
    auto integrand = [&](double x, double, double db) -> cplx {
      const double om = window_eval(w, x);
      if (om == 0.0) return 0.0;
      const double z = x * x / (two_l * two_l);
      const double hi = std::min(a2, two_l);
      const double wz = hi == two_l ? db * (x + two_l) / (two_l * two_l) : 1.0 - z;
      return om * specfun::hyp2f1(ga, b, 0.5, z, wz).value;
    };
    const auto r = quad::tanh_sinh<cplx>(integrand, a1, std::min(a2, two_l), scale / std::max(std::abs(pre), 1e-300), 1e-13);
    total += pre * r.value;
    err += std::abs(pre) * r.err;
    evals += r.evals;
  }
  return {total.value(), err, std::max(evals, 1L), "hypergeometric"};
}

// --- h ----------------------------------------------------------------------

EvalResult h_integral(const WindowSpec& w, cplx s, int l, double r) {
  const auto wc = window_cosine(w);
  const double x_max = 2.0 * l * wc->t_cut;
  const auto nodes = bessel_nodes(x_max, w.upper() / (2.0 * l), r, s.real(), std::abs(s.imag()) + 2.0 * std::abs(r));
  std::vector<double> xs(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) xs[i] = nodes[i].x;
  const auto k0 = specfun::bessel_kernel_k0_sweep(r, xs);
  CompensatedSum<cplx> acc;
  for (std::size_t i = 0; i < nodes.size(); ++i) acc += nodes[i].w * k0[i] * f_from_table(*wc, s, l, xs[i]) / xs[i];
  return {kPi * acc.value(), 1e-10 * wc->l1, static_cast<long>(nodes.size()), "bessel-kernel-integral"};
}

EvalResult h_hypergeometric_raw(const WindowSpec& w, cplx s, int l, cplx r) {
  const cplx i(0.0, 1.0);
  const double two_l = 2.0 * l;
  const double a1 = w.lower(), a2 = w.upper();
  const double scale = 1e-13 * window_moment0(w).real();
  CompensatedSum<cplx> total;
  double err = 0.0;
  long evals = 0;
  if (a2 > two_l) {
    for (const cplx rr : {r, -r}) {
      const cplx ir = i * rr;
      const cplx a = s / 2.0 + ir, b = s / 2.0 + 0.5 + ir, c = 1.0 + 2.0 * ir;
      const cplx pre = sin_pi(s / 2.0 - 0.5 + ir) / sin_pi(ir) *
                       std::exp(specfun::log_gamma(0.5 + s / 2.0 + ir).value + specfun::log_gamma(a).value) *
                       specfun::rgamma(c);
      auto integrand = [&](double x, double da, double) -> cplx {
        const double om = window_eval(w, x);
        if (om == 0.0) return 0.0;
        const double z = two_l * two_l / (x * x);
        const double lo = std::max(a1, two_l);
        const double wz = lo == two_l ? da * (x + two_l) / (x * x) : 1.0 - z;
        return om / 2.0 * std::exp(-s * std::log(x) - 2.0 * ir * std::log(x / two_l)) *
               specfun::hyp2f1(a, b, c, z, wz).value;
      };
      const auto res = quad::tanh_sinh<cplx>(integrand, std::max(a1, two_l), a2, scale / std::max(std::abs(pre), 1e-300), 1e-13);
      total += pre * res.value;
      err += std::abs(pre) * res.err;
      evals += res.evals;
    }
  }
  if (a1 < two_l) {
    const cplx a = s / 2.0 + i * r, b = s / 2.0 - i * r;
    const cplx pre = std::cos(kPi * s / 2.0) * std::exp(-s * std::log(two_l)) *
                     std::exp(specfun::log_gamma(a).value + specfun::log_gamma(b).value) / std::sqrt(kPi);
    auto integrand = [&](double x, double, double db) -> cplx {
      const double om = window_eval(w, x);
      if (om == 0.0) return 0.0;
      const double z = x * x / (two_l * two_l);
      const double hi = std::min(a2, two_l);
      const double wz = hi == two_l ? db * (x + two_l) / (two_l * two_l) : 1.0 - z;
      return om * specfun::hyp2f1(a, b, 0.5, z, wz).value;
    };
    const auto res = quad::tanh_sinh<cplx>(integrand, a1, std::min(a2, two_l), scale / std::max(std::abs(pre), 1e-300), 1e-13);
    total += pre * res.value;
    err += std::abs(pre) * res.err;
    evals += res.evals;
  }
  return {total.value(), err, std::max(evals, 1L), "hypergeometric"};
}

EvalResult h_hypergeometric(const WindowSpec& w, cplx s, int l, cplx r) {
  // h1(r) and h1(-r) each carry a 1/sin(pi i r) pole that cancels in the sum.
  // Near r = 0 interpolate by the Cauchy formula on a circle inside the strip
  // |Im r| < Re s / 2 where h is analytic; h is even, so half the nodes suffice.
  const double radius = std::min(0.1, s.real() / 4.0);
  if (std::abs(r) >= radius / 2.0) return h_hypergeometric_raw(w, s, l, r);
  constexpr int kNodes = 32;
  CompensatedSum<cplx> acc;
  double err = 0.0;
  long evals = 0;
  for (int m = 0; m < kNodes / 2; ++m) {
    const cplx z = std::polar(radius, 2.0 * kPi * (m + 0.5) / kNodes);
    const EvalResult hz = h_hypergeometric_raw(w, s, l, z);
    acc += hz.value * (z / (z - r) + z / (z + r));
    err += 2.0 * hz.err;
    evals += hz.terms;
  }
  const cplx v = acc.value() / static_cast<double>(kNodes);
  err = err / kNodes + std::pow(2.0, -kNodes) * std::abs(v);
  return {v, err, evals, "hypergeometric-cauchy"};
}

CosineTransform closed_form_transform(const WindowSpec& w, double t_max) {
  const double lo = w.lower() > 2.0 ? std::acosh(w.lower() / 2.0) : 0.0;
  const double hi = std::acosh(w.upper() / 2.0);
  auto v = [w](double xi) { return window_eval(w, 2.0 * std::cosh(xi)); };
  std::vector<double> br{lo};
  for (double b : w.breakpoints())
    if (b > 2.0 && std::acosh(b / 2.0) > lo && std::acosh(b / 2.0) < hi) br.push_back(std::acosh(b / 2.0));
  br.push_back(hi);
  return CosineTransform(v, br, t_max);
}

EvalResult h_closed_s1(const WindowSpec& w, double r) {
  if (w.upper() <= 2.0) return {0.0, 0.0, 1, "closed-s1"};
  const double t = 2.0 * std::abs(r);
  const CosineTransform ct = closed_form_transform(w, std::max(t, 1.0));
  return {std::sqrt(kPi) * ct(t), 1e-13 * ct.l1_norm(), 1, "closed-s1"};
}

}  // namespace

// --- CosineTransform / CosineTable -----------------------------------------

CosineTransform::CosineTransform(std::function<double(double)> v, std::vector<double> breaks, double t_max)
    : t_max_(t_max), l1_(0.0) {
  const auto& r = quad::gauss_legendre(kOrder);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i], b = breaks[i + 1];
    if (b <= a) continue;
    const int panels = std::max(64, static_cast<int>(std::ceil((b - a) * t_max / kPanelPhase)));
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
      const double c = a + (p + 0.5) * h;
      for (int j = 0; j < kOrder; ++j) {
        const double y = c + h / 2.0 * r.nodes[j];
        const double wv = r.weights[j] * h / 2.0 * v(y);
        if (wv == 0.0) continue;
        y_.push_back(y);
        wv_.push_back(wv);
        l1_ += std::abs(wv);
      }
    }
  }
}

CosineTransform CosineTransform::of_window(const WindowSpec& w, double t_max) {
  return CosineTransform([w](double y) { return window_eval(w, y); }, w.breakpoints(), t_max);
}

double CosineTransform::operator()(double t) const {
  CompensatedSum<double> acc;
  for (std::size_t j = 0; j < y_.size(); ++j) acc += wv_[j] * std::cos(t * y_[j]);
  return acc.value();
}

double CosineTransform::deriv(double t) const {
  CompensatedSum<double> acc;
  for (std::size_t j = 0; j < y_.size(); ++j) acc += -wv_[j] * y_[j] * std::sin(t * y_[j]);
  return acc.value();
}

double CosineTransform::decay_cutoff(double tol, double power) const {
  double ymax = 0.0;
  for (double y : y_) ymax = std::max(ymax, std::abs(y));
  const double dt = kPi / (4.0 * std::max(ymax, 1.0));
  double last = 0.0;
  for (double t = 0.0; t <= t_max_; t += dt)
    if (std::abs((*this)(t)) * std::pow(1.0 + t, power) > tol) last = t;
  return last + 2.0 * kPi / std::max(ymax, 1.0);
}

CosineTable::CosineTable(const CosineTransform& c, double t_end, double step) : step_(step), t_end_(t_end) {
  const std::size_t n = static_cast<std::size_t>(std::ceil(t_end / step)) + 2;
  v_.assign(n, 0.0);
  d_.assign(n, 0.0);
  // e^{i m step y} by rotation, reseeded exactly every kReseed steps.
  constexpr std::size_t kReseed = 512;
  for (std::size_t j = 0; j < c.y_.size(); ++j) {
    const double y = c.y_[j], wv = c.wv_[j];
    const cplx rot = std::polar(1.0, step * y);
    cplx e;
    for (std::size_t m = 0; m < n; ++m) {
      e = m % kReseed == 0 ? std::polar(1.0, m * step * y) : e * rot;
      v_[m] += wv * e.real();
      d_[m] -= wv * y * e.imag();
    }
  }
}

CosineTable::CosineTable(std::vector<double> values, std::vector<double> derivs, double step)
    : step_(step), t_end_(step * static_cast<double>(values.size() - 1)), v_(std::move(values)), d_(std::move(derivs)) {
  if (v_.size() < 2 || d_.size() != v_.size()) throw DomainError("CosineTable: need matching samples");
}

double CosineTable::operator()(double t) const {
  if (t < 0.0) t = -t;
  const double u = t / step_;
  std::size_t i = static_cast<std::size_t>(u);
  if (i + 1 >= v_.size()) return 0.0;
  const double p = u - i;
  const double p2 = p * p, p3 = p2 * p;
  const double h00 = 2 * p3 - 3 * p2 + 1, h10 = p3 - 2 * p2 + p, h01 = -2 * p3 + 3 * p2, h11 = p3 - p2;
  return h00 * v_[i] + h10 * step_ * d_[i] + h01 * v_[i + 1] + h11 * step_ * d_[i + 1];
}

// --- public weights --------------------------------------------------------

cplx f_weight(const WindowSpec& w, cplx s, int l, double x) {
  check_common(w, l);
  if (!(x > 0.0)) throw DomainError("f_weight: x must be positive");
  const double t = x / (2.0 * l);
  const double c = CosineTransform::of_window(w, std::max(t, 1.0))(t);
  return 2.0 / std::sqrt(kPi) * std::exp(s * std::log(x / (4.0 * l))) * c;
}

EvalResult g_weight(const WindowSpec& w, cplx s, int l, int k, GMethod method) {
  check_common(w, l);
  if (k < 1) throw DomainError("g_weight: k must be positive");
  if (method == GMethod::integral) {
    if (!(s.real() > 1.0 - 2.0 * k)) throw DomainError("g_weight: integral route needs Re s > 1 - 2k");
    return g_integral(w, s, l, k);
  }
  if (!(s.real() > 1.0 - 2.0 * k && s.real() < 1.5))
    throw DomainError("g_weight: hypergeometric split needs 1 - 2k < Re s < 3/2");
  return g_hypergeometric(w, s, l, k);
}

EvalResult h_weight(const WindowSpec& w, cplx s, int l, cplx r, HMethod method) {
  check_common(w, l);
  switch (method) {
    case HMethod::integral:
      if (r.imag() != 0.0) throw DomainError("h_weight: integral route needs real r");
      if (!(s.real() > 0.0)) throw DomainError("h_weight: integral route needs Re s > 0");
      return h_integral(w, s, l, r.real());
    case HMethod::hypergeometric:
      if (!(s.real() > 0.0 && s.real() < 1.5)) throw DomainError("h_weight: hypergeometric split needs 0 < Re s < 3/2");
      return h_hypergeometric(w, s, l, r);
    case HMethod::closed_s1:
      if (s != cplx(1.0, 0.0) || l != 1) throw DomainError("h_weight: closed form needs s = 1, l = 1");
      if (r.imag() != 0.0) throw DomainError("h_weight: closed form needs real r");
      return h_closed_s1(w, r.real());
  }
  throw DomainError("h_weight: unknown method");
}

EvalResult h_special_point(const WindowSpec& w, cplx s, int l) {
  check_common(w, l);
  if (s.real() > 1.0) throw DomainError("h_special_point: needs Re s <= 1");
  const double two_l = 2.0 * l;
  const double a1 = w.lower(), a2 = w.upper();
  const double scale = 1e-13 * window_moment0(w).real();
  const cplx e = 0.5 - s;
  CompensatedSum<cplx> acc;
  double err = 0.0;
  long evals = 0;
  if (a2 > two_l) {
    auto f = [&](double x, double da, double) -> cplx {
      const double om = window_eval(w, x);
      if (om == 0.0) return 0.0;
      const double d = std::max(a1, two_l) == two_l ? da * (x + two_l) : x * x - two_l * two_l;
      return om * std::exp(e * std::log(d));
    };
    const auto r = quad::tanh_sinh<cplx>(f, std::max(a1, two_l), a2, scale, 1e-13);
    acc += sin_pi(s / 2.0) * r.value;
    err += r.err;
    evals += r.evals;
  }
  if (a1 < two_l) {
    auto f = [&](double x, double, double db) -> cplx {
      const double om = window_eval(w, x);
      if (om == 0.0) return 0.0;
      const double d = std::min(a2, two_l) == two_l ? db * (x + two_l) : two_l * two_l - x * x;
      return om * std::exp(e * std::log(d));
    };
    const auto r = quad::tanh_sinh<cplx>(f, a1, std::min(a2, two_l), scale, 1e-13);
    acc += std::cos(kPi * s / 2.0) * r.value;
    err += r.err;
    evals += r.evals;
  }
  const cplx pre = specfun::gamma(s - 0.5) * std::exp((s - 1.0) * std::log(two_l));
  return {pre * acc.value(), std::abs(pre) * err, std::max(evals, 1L), "special-point"};
}

EvalResult h_integral_zero(const WindowSpec& w) {
  check_common(w, 1);
  if (w.upper() <= 2.0) return {0.0, 0.0, 1, "closed-s1"};
  const double lo = w.lower() > 2.0 ? std::acosh(w.lower() / 2.0) : 0.0;
  const double hi = std::acosh(w.upper() / 2.0);
  std::vector<double> br{lo};
  for (double b : w.breakpoints())
    if (b > 2.0 && std::acosh(b / 2.0) > lo && std::acosh(b / 2.0) < hi) br.push_back(std::acosh(b / 2.0));
  br.push_back(hi);
  const SampledCosine sc =
      sample_cosine([w](double xi) { return window_eval(w, 2.0 * std::cosh(xi)); }, lo, hi, min_segment(br), 0.0, 1e-15);
  // h(r) = sqrt(pi) C(2r); int_{-R}^{R} cos(2 r y) dr = sin(2 R y) / y.
  const double R = sc.t_cut / 2.0;
  CompensatedSum<double> acc;
  for (std::size_t j = 0; j < sc.y.size(); ++j) {
    const double y = sc.y[j];
    acc += sc.wv[j] * (y == 0.0 ? 2.0 * R : std::sin(2.0 * R * y) / y);
  }
  EvalResult r{std::sqrt(kPi) * acc.value(), 1e-13 * sc.l1 * R, static_cast<long>(sc.y.size()), "closed-s1-trapezoid"};
  if (window_eval(w, 2.0) != 0.0) r.warning = "slow-decay: omega(2) != 0, h(r) is not integrable in the limit";
  return r;
}

}  // namespace gdl::transforms
