#ifndef COHESION_LAB_BIGINT_HPP
#define COHESION_LAB_BIGINT_HPP

#include <boost/multiprecision/cpp_int.hpp>

namespace cohesion_lab {

using BigInt = boost::multiprecision::cpp_int;

// n choose k for small k, exact.
inline BigInt binomial(const BigInt& n, unsigned k) {
    if (n < k) {
        return 0;
    }
    BigInt r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;
    }
    return r;
}

} // namespace cohesion_lab

#endif // COHESION_LAB_BIGINT_HPP
