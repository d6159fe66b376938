#pragma once

#include <stdexcept>
#include <string>

namespace detm {

/// A mathematical hypothesis of the method does not hold for the given
/// instance (e.g. gcd(q, g(0,0)) != 1). The CLI maps this to exit code 2.
class HypothesisViolation : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace detm
