#ifndef NORMALFAM_POLYNOMIAL_HPP
#define NORMALFAM_POLYNOMIAL_HPP

#include <vector>

#include "normalfam/exact.hpp"

namespace normalfam {

/// Polynomial over the Gaussian rationals, coefficients ascending by degree.
/// The zero polynomial is the empty list; otherwise the leading coefficient
/// is nonzero.
class GPolynomial {
public:
    GPolynomial() = default;
    explicit GPolynomial(std::vector<GaussRat> coeffs) : c_(std::move(coeffs)) { trim(); }
    static GPolynomial constant(GaussRat v);
    static GPolynomial from_longs(std::initializer_list<long> coeffs);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    const std::vector<GaussRat>& coeffs() const { return c_; }
    const GaussRat& operator[](size_t k) const { return c_[k]; }
    const GaussRat& leading() const;

    GaussRat eval(const GaussRat& x) const;
    cdouble eval(cdouble x) const;

    GPolynomial derivative() const;
    GPolynomial monic() const;

    friend GPolynomial operator+(const GPolynomial& a, const GPolynomial& b);
    friend GPolynomial operator-(const GPolynomial& a, const GPolynomial& b);
    friend GPolynomial operator*(const GPolynomial& a, const GPolynomial& b);
    GPolynomial scaled(const GaussRat& k) const;

    friend bool operator==(const GPolynomial& a, const GPolynomial& b) { return a.c_ == b.c_; }

    std::string str() const;

private:
    void trim();
    std::vector<GaussRat> c_;
};

/// Quotient/remainder with deg(rem) < deg(b). b must be nonzero.
std::pair<GPolynomial, GPolynomial> divmod(const GPolynomial& a, const GPolynomial& b);

/// Monic gcd via the Euclidean algorithm; gcd(0, 0) = 0.
GPolynomial poly_gcd(GPolynomial a, GPolynomial b);

/// Yun squarefree decomposition: p = lc * prod factors[i]^(i+1) with each
/// factor squarefree and pairwise coprime. deg(factors[i]) counts the
/// distinct roots of multiplicity i+1.
std::vector<GPolynomial> squarefree_decomposition(const GPolynomial& p);

/// All complex roots (with multiplicity, repeated) by simultaneous iteration.
/// Exact multiple roots come out as clusters; degree <= ~24 intended.
std::vector<cdouble> polynomial_roots(const GPolynomial& p);

} // namespace normalfam

#endif
