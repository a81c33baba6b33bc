#ifndef THETACORR_GF_HPP
#define THETACORR_GF_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "thetacorr/errors.hpp"

namespace thetacorr {

class FieldContext;
class UniPolynomial;
using ContextPtr = std::shared_ptr<const FieldContext>;

// An element of F_p or of an extension F_q = base[X]/(m(X)).  Prime-field
// elements hold a single reduced residue; extension elements hold a
// coefficient vector of length deg(m) over the base context.  Elements keep a
// raw pointer to their context; contexts are owned via shared_ptr by whoever
// built the tower and must outlive the elements.
class FieldElement {
public:
    FieldElement() = default;

    const FieldContext* ctx() const { return ctx_; }
    bool valid() const { return ctx_ != nullptr; }
    bool is_zero() const;
    bool is_one() const;

    uint64_t residue() const { return res_; }                       // prime contexts
    const std::vector<FieldElement>& coeffs() const { return c_; }  // extension contexts

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement inv() const;
    FieldElement pow(uint64_t e) const;
    // x -> x^(p^k), the k-fold characteristic-power map.
    FieldElement frobenius_p(uint64_t k) const;
    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    // Lift into an extension whose base chain contains this element's context.
    FieldElement lift_to(const FieldContext* target) const;

    std::string to_string() const;

private:
    friend class FieldContext;
    const FieldContext* ctx_ = nullptr;
    uint64_t res_ = 0;
    std::vector<FieldElement> c_;
};

// Total ordering used for all deterministic tie-breaks: compare coefficient
// vectors most-significant coefficient first, recursively down to residues.
bool canonical_less(const FieldElement& a, const FieldElement& b);
int canonical_cmp(const FieldElement& a, const FieldElement& b);

// Dense univariate polynomial over a FieldContext, lowest coefficient first.
class UniPolynomial {
public:
    UniPolynomial() = default;
    explicit UniPolynomial(const FieldContext* ctx) : ctx_(ctx) {}
    UniPolynomial(const FieldContext* ctx, std::vector<FieldElement> coeffs);
    static UniPolynomial from_ints(const FieldContext* ctx, const std::vector<int64_t>& coeffs);
    static UniPolynomial x(const FieldContext* ctx);
    static UniPolynomial constant(FieldElement c);

    const FieldContext* ctx() const { return ctx_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    bool is_one() const;
    FieldElement coeff(int i) const;
    const std::vector<FieldElement>& coeffs() const { return c_; }
    FieldElement lead() const;
    bool is_monic() const;

    UniPolynomial operator+(const UniPolynomial& o) const;
    UniPolynomial operator-(const UniPolynomial& o) const;
    UniPolynomial operator*(const UniPolynomial& o) const;
    UniPolynomial operator*(const FieldElement& s) const;
    bool operator==(const UniPolynomial& o) const;
    bool operator!=(const UniPolynomial& o) const { return !(*this == o); }

    UniPolynomial monic() const;
    UniPolynomial derivative() const;
    FieldElement eval(const FieldElement& x) const;
    UniPolynomial lift_to(const FieldContext* target) const;

    std::string to_string(const std::string& var = "X") const;

private:
    void normalize();
    const FieldContext* ctx_ = nullptr;
    std::vector<FieldElement> c_;
};

std::pair<UniPolynomial, UniPolynomial> divrem(const UniPolynomial& a, const UniPolynomial& b);
UniPolynomial operator%(const UniPolynomial& a, const UniPolynomial& b);
UniPolynomial operator/(const UniPolynomial& a, const UniPolynomial& b);
// Monic gcd; gcd(0, 0) throws ZeroPolynomial.
UniPolynomial upoly_gcd(const UniPolynomial& a, const UniPolynomial& b);
UniPolynomial pow_mod(const UniPolynomial& a, uint64_t e, const UniPolynomial& mod);
// a^(p^k) mod m, via k characteristic-power steps.
UniPolynomial frobenius_pow_mod(const UniPolynomial& a, uint64_t k, const UniPolynomial& mod);

// The coefficient domain: F_p (p an odd prime) or an extension of another
// context by a monic irreducible modulus.  Towers nest through base().
class FieldContext : public std::enable_shared_from_this<FieldContext> {
public:
    // Throws EvenCharacteristic / CompositeCharacteristic.
    static ContextPtr prime_field(uint64_t p);
    // Throws ReducibleModulus if the modulus is not irreducible over base.
    static ContextPtr extension(ContextPtr base, const UniPolynomial& modulus);

    uint64_t characteristic() const { return p_; }
    bool is_prime_field() const { return base_ == nullptr; }
    const ContextPtr& base_ptr() const { return base_; }
    const FieldContext* base() const { return base_.get(); }
    const UniPolynomial& modulus() const { return modulus_; }
    int degree() const { return degree_; }  // over the base; 1 for a prime field
    int absolute_degree() const { return abs_degree_; }
    // |F_q| when it fits a 64-bit word.
    std::optional<uint64_t> size_u64() const { return size_; }
    // (q - 1) mod m, valid for towers of any size.
    uint64_t order_mod(uint64_t m) const;

    bool equals(const FieldContext& o) const;  // structural: (p, tower of moduli)

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_int(int64_t v) const;
    FieldElement from_coeffs(std::vector<FieldElement> coeffs) const;  // over base
    FieldElement generator() const;  // class of X; extension contexts only
    FieldElement random_element(std::mt19937_64& rng) const;

    // Canonical enumeration: 0, 1, ..., p-1, X, X+1, ...  Returns false once
    // the odometer wraps past the last element.
    bool next_element(FieldElement& e) const;

    // True if `anc` appears in this context's base chain (or equals it).
    bool has_ancestor(const FieldContext* anc) const;

    std::string describe() const;

private:
    FieldContext() = default;
    uint64_t p_ = 0;
    ContextPtr base_;
    UniPolynomial modulus_;
    int degree_ = 1;
    int abs_degree_ = 1;
    std::optional<uint64_t> size_;
};

// --- module operations -----------------------------------------------------

ContextPtr make_context(uint64_t p, const std::optional<UniPolynomial>& modulus = std::nullopt);

// Monic irreducible of the requested degree, deterministic for a fixed seed.
UniPolynomial find_irreducible(const ContextPtr& ctx, int degree, uint64_t seed);

bool is_irreducible(const UniPolynomial& f);

// Element of exact multiplicative order m, smallest in the canonical element
// ordering.  Throws NoSuchRoot when m does not divide q - 1.
FieldElement root_of_unity(const ContextPtr& ctx, uint64_t m);

// Monic irreducible factors with multiplicities, canonically sorted.
std::vector<std::pair<UniPolynomial, int>> factor_univariate(const UniPolynomial& f, uint64_t seed);

UniPolynomial squarefree_part(const UniPolynomial& f);

// Distinct roots of f lying in its coefficient field.
std::vector<FieldElement> roots_in_field(const UniPolynomial& f, uint64_t seed = 1);

std::vector<uint64_t> prime_factors(uint64_t n);
bool is_prime_u64(uint64_t n);

}  // namespace thetacorr

#endif
