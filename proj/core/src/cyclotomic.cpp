#include "todatt/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace todatt {

namespace {

using Poly = std::vector<Rational>;

void trim(Poly& p) {
    while (p.size() > 1 && p.back() == 0) p.pop_back();
}

Poly multiply(const Poly& a, const Poly& b) {
    Poly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

// Quotient of exact division by a monic polynomial.
Poly divide_exact(Poly num, const Poly& monic) {
    trim(num);
    const std::size_t dd = monic.size() - 1;
    if (num.size() - 1 < dd) throw std::logic_error("cyclotomic division: degree too small");
    Poly q(num.size() - dd, Rational(0));
    for (std::size_t k = num.size(); k-- > dd;) {
        const Rational c = num[k];
        if (c == 0) continue;
        q[k - dd] = c;
        for (std::size_t j = 0; j <= dd; ++j) num[k - dd + j] -= c * monic[j];
    }
    for (const auto& r : num)
        if (r != 0) throw std::logic_error("cyclotomic division left a remainder");
    return q;
}

Poly cyclotomic_polynomial(int order, std::map<int, Poly>& cache) {
    if (auto it = cache.find(order); it != cache.end()) return it->second;
    Poly p(static_cast<std::size_t>(order) + 1, Rational(0));
    p[0] = -1;
    p[static_cast<std::size_t>(order)] = 1;
    for (int d = 1; d < order; ++d)
        if (order % d == 0) p = divide_exact(p, cyclotomic_polynomial(d, cache));
    cache.emplace(order, p);
    return p;
}

}  // namespace

CyclotomicField::CyclotomicField(int order) : order_(order) {
    if (order < 1) throw std::invalid_argument("cyclotomic order must be positive");
    std::map<int, Poly> cache;
    modulus_ = cyclotomic_polynomial(order, cache);
}

std::shared_ptr<const CyclotomicField> CyclotomicField::of_order(int order) {
    static std::mutex mutex;
    static std::map<int, std::shared_ptr<const CyclotomicField>> interned;
    std::lock_guard lock(mutex);
    auto& slot = interned[order];
    if (!slot) slot = std::make_shared<const CyclotomicField>(order);
    return slot;
}

std::vector<Rational> CyclotomicField::reduce(std::vector<Rational> poly) const {
    const std::size_t d = degree();
    for (std::size_t k = poly.size(); k-- > d;) {
        const Rational c = poly[k];
        if (c == 0) continue;
        for (std::size_t j = 0; j <= d; ++j) poly[k - d + j] -= c * modulus_[j];
    }
    poly.resize(d, Rational(0));
    return poly;
}

Cyclotomic Cyclotomic::root_power(const std::shared_ptr<const CyclotomicField>& field, long long k) {
    const long long order = field->order();
    const auto e = static_cast<std::size_t>(((k % order) + order) % order);
    std::vector<Rational> poly(e + 1, Rational(0));
    poly[e] = 1;
    return Cyclotomic(field, field->reduce(std::move(poly)));
}

bool Cyclotomic::is_zero() const {
    for (const auto& c : coeffs_)
        if (c != 0) return false;
    return true;
}

bool Cyclotomic::is_rational() const {
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
        if (coeffs_[k] != 0) return false;
    return true;
}

void Cyclotomic::promote_to(const std::shared_ptr<const CyclotomicField>& field) {
    if (field_ == field) return;
    if (field_) throw std::invalid_argument("cyclotomic values from different fields");
    field_ = field;
    coeffs_.resize(field->degree(), Rational(0));
    if (coeffs_.empty()) coeffs_.push_back(0);
}

void Cyclotomic::unify(Cyclotomic& other) {
    if (field_ && other.field_ && field_ != other.field_)
        throw std::invalid_argument("cyclotomic values from different fields");
    if (field_) other.promote_to(field_);
    else if (other.field_) promote_to(other.field_);
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
    Cyclotomic rhs = o;
    unify(rhs);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
    return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) {
    Cyclotomic rhs = o;
    unify(rhs);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
    return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
    if (o.is_rational()) {
        const Rational s = o.coeffs_.front();
        if (o.field_ && !field_) promote_to(o.field_);
        for (auto& c : coeffs_) c *= s;
        return *this;
    }
    Cyclotomic rhs = o;
    unify(rhs);
    coeffs_ = field_->reduce(multiply(coeffs_, rhs.coeffs_));
    return *this;
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

Cyclotomic Cyclotomic::conj() const {
    if (!field_ || is_rational()) return *this;
    const auto order = static_cast<std::size_t>(field_->order());
    std::vector<Rational> poly(order, Rational(0));
    poly[0] = coeffs_[0];
    for (std::size_t k = 1; k < coeffs_.size(); ++k) poly[order - k] += coeffs_[k];
    return Cyclotomic(field_, field_->reduce(std::move(poly)));
}

Cyclotomic Cyclotomic::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero in cyclotomic field");
    if (!field_ || is_rational()) {
        Cyclotomic r = *this;
        const Rational inv = Rational(1) / coeffs_.front();
        for (auto& c : r.coeffs_) c = 0;
        r.coeffs_.front() = inv;
        return r;
    }
    // Solve (multiplication-by-this) * x = e_0 over Q.
    const std::size_t d = field_->degree();
    std::vector<std::vector<Rational>> a(d, std::vector<Rational>(d + 1, Rational(0)));
    for (std::size_t j = 0; j < d; ++j) {
        std::vector<Rational> basis(j + 1, Rational(0));
        basis[j] = 1;
        const auto col = field_->reduce(multiply(coeffs_, basis));
        for (std::size_t i = 0; i < d; ++i) a[i][j] = col[i];
    }
    a[0][d] = 1;
    for (std::size_t c = 0; c < d; ++c) {
        std::size_t p = c;
        while (p < d && a[p][c] == 0) ++p;
        if (p == d) throw std::domain_error("cyclotomic element is not invertible");
        std::swap(a[p], a[c]);
        const Rational inv = Rational(1) / a[c][c];
        for (auto& v : a[c]) v *= inv;
        for (std::size_t r = 0; r < d; ++r) {
            if (r == c || a[r][c] == 0) continue;
            const Rational f = a[r][c];
            for (std::size_t k = c; k <= d; ++k) a[r][k] -= f * a[c][k];
        }
    }
    std::vector<Rational> x(d);
    for (std::size_t i = 0; i < d; ++i) x[i] = a[i][d];
    return Cyclotomic(field_, std::move(x));
}

Complex Cyclotomic::to_complex() const {
    if (!field_) return Complex(to_double(coeffs_.front()), 0.0);
    const double step = 2.0 * std::numbers::pi / field_->order();
    Complex z(0.0, 0.0);
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
        if (coeffs_[k] != 0) z += to_double(coeffs_[k]) * std::polar(1.0, step * static_cast<double>(k));
    return z;
}

std::string Cyclotomic::str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (coeffs_[k] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << to_string(coeffs_[k]);
        if (k > 0) os << "*z^" << k;
    }
    if (first) os << "0";
    return os.str();
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.field_ && b.field_ && a.field_ != b.field_) return false;
    const std::size_t n = std::max(a.coeffs_.size(), b.coeffs_.size());
    for (std::size_t k = 0; k < n; ++k) {
        const Rational ak = k < a.coeffs_.size() ? a.coeffs_[k] : Rational(0);
        const Rational bk = k < b.coeffs_.size() ? b.coeffs_[k] : Rational(0);
        if (ak != bk) return false;
    }
    return true;
}

ComplexMatrix to_complex(const CyclotomicMatrix& m) {
    ComplexMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).to_complex();
    return r;
}

}  // namespace todatt
