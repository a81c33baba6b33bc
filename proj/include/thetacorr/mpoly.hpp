#ifndef THETACORR_MPOLY_HPP
#define THETACORR_MPOLY_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "thetacorr/gf.hpp"

namespace thetacorr {

// Ordered variable list with an optional X/Y block partition (Y is the block
// kept by elimination).
struct VariableSet {
    std::vector<std::string> names;
    std::vector<uint8_t> y_mask;  // same length as names once a partition is set

    int arity() const { return static_cast<int>(names.size()); }
    bool has_blocks() const { return !y_mask.empty(); }
    int index_of(const std::string& name) const;
};
using VarsPtr = std::shared_ptr<const VariableSet>;

VarsPtr make_vars(std::vector<std::string> names, std::vector<uint8_t> y_mask = {});

struct Monomial {
    std::vector<uint16_t> e;

    static Monomial one(int arity) { return Monomial{std::vector<uint16_t>(arity, 0)}; }
    int arity() const { return static_cast<int>(e.size()); }
    bool is_one() const;
    int degree() const;
    int degree_masked(const std::vector<uint8_t>& mask, bool in_y) const;
    bool divides(const Monomial& o) const;
    Monomial operator*(const Monomial& o) const;
    Monomial operator/(const Monomial& o) const;  // requires o | this
    static Monomial lcm(const Monomial& a, const Monomial& b);
    bool operator==(const Monomial& o) const { return e == o.e; }
    bool operator!=(const Monomial& o) const { return e != o.e; }
    bool operator<(const Monomial& o) const { return e < o.e; }  // container key order only
};

class MonomialOrder {
public:
    enum Kind { Lex, Grevlex, BlockElim };

    static MonomialOrder lex() { return MonomialOrder(Lex); }
    static MonomialOrder grevlex() { return MonomialOrder(Grevlex); }
    // Eliminates the X block (variables with y_mask false); X exponents are
    // compared first, grevlex within each block.
    static MonomialOrder block_elim(std::vector<uint8_t> y_mask);
    static MonomialOrder lex_permuted(std::vector<int> significance);

    Kind kind() const { return kind_; }
    // >0 when a > b
    int cmp(const Monomial& a, const Monomial& b) const;
    bool less(const Monomial& a, const Monomial& b) const { return cmp(a, b) < 0; }
    bool operator==(const MonomialOrder& o) const {
        return kind_ == o.kind_ && y_mask_ == o.y_mask_ && perm_ == o.perm_;
    }

private:
    explicit MonomialOrder(Kind k) : kind_(k) {}
    Kind kind_;
    std::vector<uint8_t> y_mask_;
    std::vector<int> perm_;  // significance order; empty = variable order as listed
};

// Sparse multivariate polynomial; terms kept sorted descending under `order`.
class Polynomial {
public:
    using Term = std::pair<Monomial, FieldElement>;

    Polynomial() = default;
    Polynomial(const FieldContext* ctx, VarsPtr vars, MonomialOrder order);
    static Polynomial from_terms(const FieldContext* ctx, VarsPtr vars, MonomialOrder order,
                                 std::vector<Term> terms);

    const FieldContext* ctx() const { return ctx_; }
    const VarsPtr& vars() const { return vars_; }
    const MonomialOrder& order() const { return order_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    int total_degree() const;

    const Monomial& leading_monomial() const;
    const FieldElement& leading_coeff() const;
    Polynomial leading_term() const;
    Polynomial tail() const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial scaled(const FieldElement& c) const;
    Polynomial times_term(const Monomial& m, const FieldElement& c) const;
    Polynomial monic() const;
    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial resorted(const MonomialOrder& order) const;
    Polynomial lift_to(const FieldContext* target) const;

    // Stable text key for dedup (independent of the active order).
    std::string canonical_key() const;
    std::string to_string() const;

private:
    const FieldContext* ctx_ = nullptr;
    VarsPtr vars_;
    MonomialOrder order_ = MonomialOrder::grevlex();
    std::vector<Term> terms_;  // descending under order_
};

Polynomial make_variable(const FieldContext* ctx, const VarsPtr& vars, const MonomialOrder& order,
                         int var_index);
Polynomial make_constant(const FieldContext* ctx, const VarsPtr& vars, const MonomialOrder& order,
                         const FieldElement& c);

// Full multivariate division remainder: no monomial of the result is
// divisible by any leading term of G.
Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& G);
Polynomial spoly(const Polynomial& f, const Polynomial& g);

FieldElement eval_poly(const Polynomial& f, const std::vector<FieldElement>& values);

// Substitute values for a subset of variables; remaining variables are
// re-indexed into a fresh VariableSet.  Zero polynomials are dropped.
struct SpecializeResult {
    VarsPtr vars;
    std::vector<int> old_to_new;  // -1 for bound variables
    std::vector<Polynomial> polys;
};
SpecializeResult specialize(const std::vector<Polynomial>& F,
                            const std::map<std::string, FieldElement>& bindings);

// Restrict polynomials lying in k[Y] to a Y-only variable set.
struct RestrictResult {
    VarsPtr vars;
    std::vector<int> old_to_new;
    std::vector<Polynomial> polys;
};
RestrictResult restrict_to_block(const std::vector<Polynomial>& F, bool keep_y);

Polynomial parse_polynomial(const FieldContext* ctx, const VarsPtr& vars, const MonomialOrder& order,
                            const std::string& text);

// --- Groebner engine ---------------------------------------------------------

struct GroebnerOptions {
    enum Selection { TotalDegree, PartialDegreeX };
    Selection selection = TotalDegree;
    bool use_pair_criteria = true;
    // Stop between batches once the interreduced Y-part of the basis has a
    // pure-power leading term for every Y variable.
    bool early_stop_zero_dim_y = false;
    int max_batches = 1 << 24;
};

struct GroebnerResult {
    std::vector<Polynomial> basis;  // reduced GB when run to completion
    bool stopped_early = false;
    int batches = 0;
    std::vector<Polynomial> y_polys;  // interreduced basis ∩ k[Y] (early-stop runs)
};

GroebnerResult buchberger(std::vector<Polynomial> F, const MonomialOrder& order,
                          const GroebnerOptions& opts = {});

std::vector<Polynomial> interreduce(std::vector<Polynomial> G);
bool is_groebner(const std::vector<Polynomial>& G);

// Generators of <F> ∩ k[Y] via a full block-order basis.
std::vector<Polynomial> eliminate(const std::vector<Polynomial>& F);

bool is_zero_dimensional(const std::vector<Polynomial>& gb);
// Staircase monomials of a zero-dimensional reduced basis; the count is the
// ideal degree.  Throws NotZeroDimensional.
std::vector<Monomial> quotient_basis(const std::vector<Polynomial>& gb, size_t limit = 1u << 20);

std::vector<Polynomial> fglm(const std::vector<Polynomial>& gb, const MonomialOrder& target);

}  // namespace thetacorr

#endif
