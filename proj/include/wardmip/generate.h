// Seeded random instances for tests, benchmarks and the `gen` command.

#ifndef WARDMIP_GENERATE_H_
#define WARDMIP_GENERATE_H_

#include <cstdint>
#include <optional>

#include "wardmip/model.h"

namespace wardmip {

struct GeneratorParams {
  int nurses = 3;
  int days = 3;
  int ranks = 1;
  int wards = 1;
  // Probability that each staffing slot of a (ward, rank, shift, day) cell
  // is demanded. 0 gives an instance with no demand at all.
  double density = 0.3;
  // Defaults to the horizon, or to a random value when vary_policy is set.
  std::optional<int> max_work_days;
  // Draw rules, leave, required counts, soft penalties and the objective
  // mode at random instead of the plain default policy.
  bool vary_policy = false;
  uint64_t seed = 0;
};

// Thrown for parameter sets no valid instance can satisfy.
class GeneratorError : public Error {
 public:
  using Error::Error;
};

// Pure function of `params`. All weights are integers. The result always
// passes ValidateInstance but may be infeasible.
ProblemInstance GenerateInstance(const GeneratorParams& params);

}  // namespace wardmip

#endif  // WARDMIP_GENERATE_H_
