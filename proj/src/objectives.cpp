#include "gnebench/objectives.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gne {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Schwefel 2.26 in optimum-shifted-to-zero form. The optimizer sits at
// x* = 420.96874635998194 per coordinate; subtracting d * x* sin(sqrt(x*))
// makes the optimum exactly 0 by construction.
constexpr double kSchwefelXOpt = 420.96874635998194;
const double kSchwefelC = kSchwefelXOpt * std::sin(std::sqrt(kSchwefelXOpt));

double sphere(const Vector& x) { return x.squaredNorm(); }

double schwefel12(const Vector& x) {
  double acc = 0.0, prefix = 0.0;
  for (int i = 0; i < x.size(); ++i) {
    prefix += x[i];
    acc += prefix * prefix;
  }
  return acc;
}

double schwefel222(const Vector& x) {
  double s = 0.0, p = 1.0;
  for (int i = 0; i < x.size(); ++i) {
    const double a = std::abs(x[i]);
    s += a;
    p *= a;
  }
  return s + p;
}

double schwefel226(const Vector& x) {
  double s = 0.0;
  for (int i = 0; i < x.size(); ++i)
    s += x[i] * std::sin(std::sqrt(std::abs(x[i])));
  return kSchwefelC * static_cast<double>(x.size()) - s;
}

double rosenbrock(const Vector& x) {
  double acc = 0.0;
  for (int i = 0; i + 1 < x.size(); ++i) {
    const double a = x[i + 1] - x[i] * x[i];
    const double b = 1.0 - x[i];
    acc += 100.0 * a * a + b * b;
  }
  return acc;
}

// The customary random[0,1) term is supplied by the noise wrapper instead,
// keeping noise handling uniform across all nine functions.
double quartic(const Vector& x) {
  double acc = 0.0;
  for (int i = 0; i < x.size(); ++i) {
    const double x2 = x[i] * x[i];
    acc += static_cast<double>(i + 1) * x2 * x2;
  }
  return acc;
}

double rastrigin(const Vector& x) {
  double acc = 10.0 * static_cast<double>(x.size());
  for (int i = 0; i < x.size(); ++i)
    acc += x[i] * x[i] - 10.0 * std::cos(kTwoPi * x[i]);
  return acc;
}

double ackley(const Vector& x) {
  const double d = static_cast<double>(x.size());
  double sq = 0.0, cs = 0.0;
  for (int i = 0; i < x.size(); ++i) {
    sq += x[i] * x[i];
    cs += std::cos(kTwoPi * x[i]);
  }
  return -20.0 * std::exp(-0.2 * std::sqrt(sq / d)) - std::exp(cs / d) +
         20.0 + std::numbers::e;
}

double levy(const Vector& x) {
  const int d = static_cast<int>(x.size());
  auto w = [&](int i) { return 1.0 + (x[i] - 1.0) / 4.0; };
  const double s0 = std::sin(std::numbers::pi * w(0));
  double acc = s0 * s0;
  for (int i = 0; i + 1 < d; ++i) {
    const double wi = w(i);
    const double s = std::sin(std::numbers::pi * wi + 1.0);
    acc += (wi - 1.0) * (wi - 1.0) * (1.0 + 10.0 * s * s);
  }
  const double wd = w(d - 1);
  const double sd = std::sin(kTwoPi * wd);
  acc += (wd - 1.0) * (wd - 1.0) * (1.0 + sd * sd);
  return acc;
}

struct FunctionEntry {
  const char* id;
  double (*fn)(const Vector&);
  double lo, hi;    // default symmetric bounds
  double opt_coord; // optimizer point, per coordinate
};

const FunctionEntry kFunctions[] = {
    {"sphere", sphere, -100.0, 100.0, 0.0},
    {"schwefel12", schwefel12, -100.0, 100.0, 0.0},
    {"schwefel222", schwefel222, -10.0, 10.0, 0.0},
    {"schwefel226", schwefel226, -500.0, 500.0, kSchwefelXOpt},
    {"rosenbrock", rosenbrock, -30.0, 30.0, 1.0},
    {"quartic", quartic, -1.28, 1.28, 0.0},
    {"rastrigin", rastrigin, -5.12, 5.12, 0.0},
    {"ackley", ackley, -32.768, 32.768, 0.0},
    {"levy", levy, -10.0, 10.0, 1.0},
};

const FunctionEntry& entry_of(const std::string& id) {
  for (const auto& e : kFunctions)
    if (id == e.id) return e;
  throw std::invalid_argument("unknown function: " + id);
}

void check_input(const ObjectiveSpec& spec, const Vector& x) {
  if (x.size() != spec.dim)
    throw std::invalid_argument("evaluate: dimension mismatch for " + spec.function_id);
  if (!x.allFinite())
    throw std::invalid_argument("evaluate: non-finite input");
}

}  // namespace

std::string noise_name(NoiseMode m) {
  return m == NoiseMode::none ? "none" : "uniform01";
}

NoiseMode noise_from_name(const std::string& s) {
  if (s == "none") return NoiseMode::none;
  if (s == "uniform01") return NoiseMode::uniform01;
  throw std::invalid_argument("unknown noise mode: " + s);
}

double eval_raw(const std::string& function_id, const Vector& x) {
  if (!x.allFinite()) throw std::invalid_argument("eval_raw: non-finite input");
  return entry_of(function_id).fn(x);
}

double evaluate(const ObjectiveSpec& spec, const Vector& x, Rng& noise_rng) {
  check_input(spec, x);
  double f;
  if (spec.shift.size() == 0 || spec.shift.isZero(0.0)) {
    f = entry_of(spec.function_id).fn(x);
  } else {
    f = entry_of(spec.function_id).fn(x - spec.shift);
  }
  if (spec.noise == NoiseMode::uniform01) f += noise_rng.unif01();
  return f;
}

double true_value(const ObjectiveSpec& spec, const Vector& x) {
  check_input(spec, x);
  if (spec.shift.size() == 0 || spec.shift.isZero(0.0))
    return entry_of(spec.function_id).fn(x);
  return entry_of(spec.function_id).fn(x - spec.shift);
}

OptimumWitness optimum_of(const ObjectiveSpec& spec) {
  const auto& e = entry_of(spec.function_id);
  Vector x = Vector::Constant(spec.dim, e.opt_coord);
  if (spec.shift.size() != 0) x += spec.shift;
  return {std::move(x), 0.0};
}

ObjectiveSpec make_objective(const std::string& function_id, int dim) {
  if (dim < 1) throw std::invalid_argument("make_objective: dim must be >= 1");
  const auto& e = entry_of(function_id);
  ObjectiveSpec spec;
  spec.function_id = e.id;
  spec.dim = dim;
  spec.lb = Vector::Constant(dim, e.lo);
  spec.ub = Vector::Constant(dim, e.hi);
  spec.shift = Vector::Zero(dim);
  return spec;
}

std::vector<ObjectiveSpec> registry() {
  std::vector<ObjectiveSpec> out;
  for (const auto& e : kFunctions) out.push_back(make_objective(e.id, 30));
  return out;
}

const std::vector<std::string>& function_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& e : kFunctions) v.emplace_back(e.id);
    return v;
  }();
  return names;
}

std::uint64_t noise_stream_seed(const ObjectiveSpec& spec, std::uint64_t run_seed) {
  return splitmix64(spec.noise_seed ^ (0x9e3779b97f4a7c15ULL * run_seed));
}

}  // namespace gne
