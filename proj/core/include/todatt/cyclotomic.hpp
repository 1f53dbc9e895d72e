#pragma once

#include <memory>
#include <string>
#include <vector>

#include "todatt/dense_matrix.hpp"
#include "todatt/rational.hpp"

namespace todatt {

/// The number field Q(zeta_K), zeta_K = exp(2 pi i / K), stored as
/// Q[x] / Phi_K(x). Instances are interned per order and immutable.
class CyclotomicField {
public:
    static std::shared_ptr<const CyclotomicField> of_order(int order);

    int order() const { return order_; }
    /// Degree of Phi_K, i.e. Euler's totient of K.
    std::size_t degree() const { return modulus_.size() - 1; }
    /// Coefficients of the monic cyclotomic polynomial, lowest degree first.
    const std::vector<Rational>& modulus() const { return modulus_; }

    /// Reduces an arbitrary polynomial in zeta modulo Phi_K to exactly
    /// degree() coefficients.
    std::vector<Rational> reduce(std::vector<Rational> poly) const;

    explicit CyclotomicField(int order);

private:
    int order_;
    std::vector<Rational> modulus_;
};

/// An element of Q(zeta_K). A default-constructed or rational-constructed value
/// carries no field and acts as a rational constant; it is promoted on first
/// contact with a field element.
class Cyclotomic {
public:
    Cyclotomic() : coeffs_{Rational(0)} {}
    Cyclotomic(const Rational& r) : coeffs_{r} {}  // NOLINT(google-explicit-constructor)
    Cyclotomic(long long v) : coeffs_{Rational(v)} {}  // NOLINT(google-explicit-constructor)

    /// zeta_K^k for any integer k (negative allowed).
    static Cyclotomic root_power(const std::shared_ptr<const CyclotomicField>& field, long long k);

    const std::shared_ptr<const CyclotomicField>& field() const { return field_; }
    bool is_zero() const;
    bool is_rational() const;
    /// Only meaningful when is_rational().
    const Rational& rational_part() const { return coeffs_.front(); }

    /// Complex conjugation zeta -> zeta^{-1}.
    Cyclotomic conj() const;
    Cyclotomic inverse() const;
    Complex to_complex() const;
    std::string str() const;

    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Cyclotomic& o);
    Cyclotomic& operator/=(const Cyclotomic& o) { return *this *= o.inverse(); }

    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
    friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }
    Cyclotomic operator-() const;

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

private:
    Cyclotomic(std::shared_ptr<const CyclotomicField> field, std::vector<Rational> coeffs)
        : field_(std::move(field)), coeffs_(std::move(coeffs)) {}

    void promote_to(const std::shared_ptr<const CyclotomicField>& field);
    void unify(Cyclotomic& other);

    std::shared_ptr<const CyclotomicField> field_;
    std::vector<Rational> coeffs_;
};

template <>
struct FieldTraits<Cyclotomic> {
    static constexpr bool exact = true;
    static Cyclotomic from_int(long long v) { return Cyclotomic(v); }
    static Cyclotomic conj(const Cyclotomic& z) { return z.conj(); }
    static double magnitude(const Cyclotomic& z) { return std::abs(z.to_complex()); }
    static bool is_zero(const Cyclotomic& z, double /*tol*/) { return z.is_zero(); }
};

using CyclotomicMatrix = DenseMatrix<Cyclotomic>;

ComplexMatrix to_complex(const CyclotomicMatrix& m);

}  // namespace todatt
