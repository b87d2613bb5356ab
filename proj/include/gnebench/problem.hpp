#pragma once

#include "gnebench/objectives.hpp"
#include "gnebench/rng.hpp"

namespace gne {

// Box-centered view of an objective. Optimizers work in y = x - c with
// c = (lb+ub)/2 and evaluate through a precomputed offset o = c - shift,
// so a problem translated as a whole (objective + bounds + init draw) yields
// bit-identical y-space trajectories: the basis of the exact translation
// equivariance property.
class BoxProblem {
 public:
  BoxProblem(const ObjectiveSpec& spec, std::uint64_t run_seed)
      : spec_(spec),
        noise_rng_(noise_stream_seed(spec, run_seed)) {
    if (spec.lb.size() != spec.dim || spec.ub.size() != spec.dim)
      throw std::invalid_argument("BoxProblem: bounds dimension mismatch");
    for (int j = 0; j < spec.dim; ++j)
      if (!(spec.lb[j] < spec.ub[j]))
        throw std::invalid_argument("BoxProblem: lb must be < ub per coordinate");
    center_ = 0.5 * (spec.lb + spec.ub);
    offset_ = spec.shift.size() == 0 ? center_ : Vector(center_ - spec.shift);
    ylb_ = spec.lb - center_;
    yub_ = spec.ub - center_;
    width_min_ = (spec.ub - spec.lb).minCoeff();
  }

  double eval_y(const Vector& y) {
    ++evals_;
    double f = eval_raw(spec_.function_id, offset_ + y);
    if (spec_.noise == NoiseMode::uniform01) f += noise_rng_.unif01();
    return f;
  }

  double true_of_y(const Vector& y) const {
    return eval_raw(spec_.function_id, offset_ + y);
  }

  Vector to_x(const Vector& y) const { return center_ + y; }

  const Vector& ylb() const { return ylb_; }
  const Vector& yub() const { return yub_; }
  double width_min() const { return width_min_; }
  long long evals() const { return evals_; }
  const ObjectiveSpec& spec() const { return spec_; }

 private:
  ObjectiveSpec spec_;
  Rng noise_rng_;
  Vector center_, offset_, ylb_, yub_;
  double width_min_ = 0.0;
  long long evals_ = 0;
};

}  // namespace gne
