#pragma once

#include <algorithm>
#include <stdexcept>

namespace gridmask {

// Application-probability rule: either a constant p, or a linear ramp from 0
// to upper_bound_P reached at ramp_end_epoch and held afterwards.
struct SchedulePolicy {
  enum class Kind { constant, linear_ramp };

  Kind kind = Kind::constant;
  double p = 0.0;
  double upper_bound_P = 0.0;
  int ramp_end_epoch = 1;

  static SchedulePolicy constant(double p) {
    SchedulePolicy policy;
    policy.kind = Kind::constant;
    policy.p = p;
    policy.validate();
    return policy;
  }

  static SchedulePolicy linear_ramp(double upper_bound, int end_epoch) {
    SchedulePolicy policy;
    policy.kind = Kind::linear_ramp;
    policy.upper_bound_P = upper_bound;
    policy.ramp_end_epoch = end_epoch;
    policy.validate();
    return policy;
  }

  void validate() const {
    if (kind == Kind::constant) {
      if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("SchedulePolicy: p must be in [0,1]");
    } else {
      if (!(upper_bound_P >= 0.0 && upper_bound_P <= 1.0))
        throw std::invalid_argument("SchedulePolicy: upper bound must be in [0,1]");
      if (ramp_end_epoch < 1)
        throw std::invalid_argument("SchedulePolicy: ramp end epoch must be >= 1");
    }
  }
};

inline double schedule_probability(const SchedulePolicy& policy, int epoch) {
  policy.validate();
  if (epoch < 0) throw std::invalid_argument("schedule_probability: epoch must be >= 0");
  if (policy.kind == SchedulePolicy::Kind::constant) return policy.p;
  const double t = std::min(static_cast<double>(epoch) / policy.ramp_end_epoch, 1.0);
  return policy.upper_bound_P * t;
}

}  // namespace gridmask
