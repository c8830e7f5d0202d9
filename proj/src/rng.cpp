#include "logitkit/rng.hpp"

#include "logitkit/special.hpp"

namespace logitkit {

double Rng::next_normal() { return normal_quantile(next_u01()); }

}  // namespace logitkit
