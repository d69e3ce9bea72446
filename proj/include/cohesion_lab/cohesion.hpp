#ifndef COHESION_LAB_COHESION_HPP
#define COHESION_LAB_COHESION_HPP

#include <compare>
#include <string>

#include "bigint.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "triangles.hpp"

namespace cohesion_lab {

/// Exact rational in [0, 1], always in lowest terms with a positive denominator.
class CohesionValue {
public:
    CohesionValue() = default;

    static CohesionValue from_fraction(BigInt num, BigInt den) {
        if (den == 0) {
            throw domain_error("zero denominator");
        }
        if (den < 0) {
            num = -num;
            den = -den;
        }
        if (num < 0 || num > den) {
            throw domain_error("value " + num.str() + "/" + den.str() + " outside [0, 1]");
        }
        if (num == 0) {
            return {};
        }
        const BigInt g = boost::multiprecision::gcd(num, den);
        CohesionValue v;
        v.num_ = num / g;
        v.den_ = den / g;
        return v;
    }

    static CohesionValue zero() { return {}; }
    static CohesionValue one() { return from_fraction(1, 1); }

    const BigInt& numerator() const noexcept { return num_; }
    const BigInt& denominator() const noexcept { return den_; }
    bool is_zero() const { return num_ == 0; }

    // Display only; never used for decisions.
    double approx() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    std::string str() const { return num_.str() + "/" + den_.str(); }

    friend bool operator==(const CohesionValue&, const CohesionValue&) = default;

    friend std::strong_ordering operator<=>(const CohesionValue& a, const CohesionValue& b) {
        const BigInt lhs = a.num_ * b.den_;
        const BigInt rhs = b.num_ * a.den_;
        if (lhs < rhs) {
            return std::strong_ordering::less;
        }
        if (rhs < lhs) {
            return std::strong_ordering::greater;
        }
        return std::strong_ordering::equal;
    }

private:
    BigInt num_ = 0;
    BigInt den_ = 1;
};

inline std::strong_ordering compare(const CohesionValue& a, const CohesionValue& b) {
    return a <=> b;
}

/// i² / (C(|S|,3)·(i+o)). Zero when |S| < 3 or i = 0 (which includes the 0/0 case).
inline CohesionValue cohesion(const BigInt& size, const BigInt& inside, const BigInt& outbound) {
    if (size < 0 || inside < 0 || outbound < 0) {
        throw domain_error("cohesion arguments must be non-negative");
    }
    const BigInt triples = binomial(size, 3);
    if (inside > triples) {
        throw domain_error(inside.str() + " inside triangles impossible for a set of size " +
                           size.str());
    }
    if (size < 3 || inside == 0) {
        return CohesionValue::zero();
    }
    return CohesionValue::from_fraction(inside * inside, triples * (inside + outbound));
}

inline CohesionValue cohesion(const BigInt& size, const TriangleCensus& c) {
    return cohesion(size, c.inside, c.outbound);
}

inline CohesionValue cohesion_of_set(const Graph& g, const VertexSet& s) {
    return cohesion(BigInt(s.size()), census(g, s));
}

/// C(k,3) / (C(k,3) + C(k,2)(n-k)): the cohesion of a k-clique inside a complete n-vertex core.
inline CohesionValue lambda_threshold(const BigInt& k, const BigInt& n) {
    if (k < 3 || k > n) {
        throw domain_error("lambda needs 3 <= k <= n, got k=" + k.str() + " n=" + n.str());
    }
    const BigInt inside = binomial(k, 3);
    return CohesionValue::from_fraction(inside, inside + binomial(k, 2) * (n - k));
}

} // namespace cohesion_lab

#endif // COHESION_LAB_COHESION_HPP
