#include <algorithm>
#include <cmath>
#include <sstream>

#include "gdl/quadrature.hpp"
#include "gdl/transforms.hpp"

namespace gdl::transforms {

namespace {

// C^infinity step: 0 for t <= 0, 1 for t >= 1.
double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

std::vector<double> parse_numbers(const std::string& body, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("window spec '" + text + "': bad number '" + item + "'");
    }
  }
  return out;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

WindowSpec WindowSpec::bump(double a1, double a2, double shape) {
  WindowSpec w;
  w.kind = WindowKind::bump;
  w.a1 = a1;
  w.a2 = a2;
  w.shape = shape;
  w.validate();
  return w;
}

WindowSpec WindowSpec::transition(double a1, double a2, double rise, double fall) {
  WindowSpec w;
  w.kind = WindowKind::transition;
  w.a1 = a1;
  w.a2 = a2;
  w.rise = rise;
  w.fall = fall;
  w.validate();
  return w;
}

WindowSpec WindowSpec::plateau(double X, double T) { return transition(T / 2.0, X, T / 2.0, T); }

WindowSpec WindowSpec::gaussian(double X, double T) {
  WindowSpec w;
  w.kind = WindowKind::gaussian;
  w.X = X;
  w.T = T;
  w.validate();
  return w;
}

WindowSpec WindowSpec::parse(const std::string& full) {
  const auto star = full.find('*');
  if (star != std::string::npos) {
    const auto amp = parse_numbers(full.substr(star + 1), full);
    if (amp.size() != 1) throw ConfigError("window spec '" + full + "': bad amplitude");
    return parse(full.substr(0, star)).scaled(amp[0]);
  }
  const std::string& text = full;
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ConfigError("window spec '" + text + "': expected kind:params");
  const std::string kind = text.substr(0, colon);
  const auto v = parse_numbers(text.substr(colon + 1), text);
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (v.size() < lo || v.size() > hi) throw ConfigError("window spec '" + text + "': wrong parameter count");
  };
  try {
    if (kind == "bump") {
      need(2, 3);
      return bump(v[0], v[1], v.size() > 2 ? v[2] : 1.0);
    }
    if (kind == "transition") {
      need(2, 4);
      const double rise = v.size() > 2 ? v[2] : (v[1] - v[0]) / 4.0;
      const double fall = v.size() > 3 ? v[3] : rise;
      return transition(v[0], v[1], rise, fall);
    }
    if (kind == "plateau") {
      need(2, 2);
      return plateau(v[0], v[1]);
    }
    if (kind == "gaussian") {
      need(2, 2);
      return gaussian(v[0], v[1]);
    }
  } catch (const DomainError& e) {
    throw ConfigError("window spec '" + text + "': " + e.what());
  }
  throw ConfigError("window spec '" + text + "': unknown kind '" + kind + "'");
}

std::string WindowSpec::to_string() const {
  std::string s;
  switch (kind) {
    case WindowKind::bump:
      s = "bump:" + fmt(a1) + "," + fmt(a2) + "," + fmt(shape);
      break;
    case WindowKind::transition:
      s = "transition:" + fmt(a1) + "," + fmt(a2) + "," + fmt(rise) + "," + fmt(fall);
      break;
    case WindowKind::gaussian:
      s = "gaussian:" + fmt(X) + "," + fmt(T);
      break;
  }
  if (amplitude != 1.0) s += "*" + fmt(amplitude);
  return s;
}

void WindowSpec::validate() const {
  switch (kind) {
    case WindowKind::bump:
      if (!(a1 > 0.0 && a2 > a1)) throw DomainError("bump window needs 0 < a1 < a2");
      if (!(shape > 0.0)) throw DomainError("bump window needs shape > 0");
      break;
    case WindowKind::transition:
      if (!(a1 > 0.0 && a2 > a1)) throw DomainError("transition window needs 0 < a1 < a2");
      if (!(rise > 0.0 && fall > 0.0 && a1 + rise <= a2 - fall))
        throw DomainError("transition window needs positive ramps that fit inside [a1, a2]");
      break;
    case WindowKind::gaussian:
      if (!(T > 0.0 && X > 0.0)) throw DomainError("gaussian window needs X > 0, T > 0");
      break;
  }
}

double WindowSpec::lower() const {
  return kind == WindowKind::gaussian ? std::max(0.0, X - 10.0 * T) : a1;
}

double WindowSpec::upper() const { return kind == WindowKind::gaussian ? X + 10.0 * T : a2; }

std::vector<double> WindowSpec::breakpoints() const {
  switch (kind) {
    case WindowKind::transition:
      return {a1, a1 + rise, a2 - fall, a2};
    case WindowKind::gaussian:
      return {lower(), X, upper()};
    default:
      return {a1, a2};
  }
}

WindowSpec WindowSpec::scaled(double c) const {
  WindowSpec w = *this;
  w.amplitude *= c;
  return w;
}

double window_eval(const WindowSpec& w, double x) {
  switch (w.kind) {
    case WindowKind::bump: {
      if (x <= w.a1 || x >= w.a2) return 0.0;
      const double t = (2.0 * x - w.a1 - w.a2) / (w.a2 - w.a1);
      return w.amplitude * std::exp(-w.shape / (1.0 - t * t));
    }
    case WindowKind::transition: {
      if (x <= w.a1 || x >= w.a2) return 0.0;
      return w.amplitude * smooth_step((x - w.a1) / w.rise) * smooth_step((w.a2 - x) / w.fall);
    }
    case WindowKind::gaussian: {
      const double u = (x - w.X) / w.T;
      return w.amplitude * std::exp(-u * u);
    }
  }
  return 0.0;
}

EvalResult window_moment0(const WindowSpec& w) {
  const auto br = w.breakpoints();
  CompensatedSum<double> acc;
  double err = 0.0;
  long evals = 0;
  for (std::size_t i = 0; i + 1 < br.size(); ++i) {
    if (br[i + 1] <= br[i]) continue;
    const auto r = quad::gauss_adaptive<double>([&](double x) { return window_eval(w, x); }, br[i], br[i + 1],
                                                1e-12 * (br[i + 1] - br[i]));
    acc += r.value;
    err += r.err;
    evals += r.evals;
  }
  return {acc.value(), err, evals, "gauss-legendre-adaptive"};
}

}  // namespace gdl::transforms
