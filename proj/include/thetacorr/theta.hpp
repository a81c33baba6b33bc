#ifndef THETACORR_THETA_HPP
#define THETACORR_THETA_HPP

#include <optional>
#include <vector>

#include "thetacorr/mpoly.hpp"

namespace thetacorr {

// The finite index group Z(δ̄) = (Z/δZ)^g.  Elements are g-tuples of residues;
// the canonical enumeration is row-major lexicographic (last coordinate
// fastest), matching coordinate storage order everywhere.
struct IndexGroup {
    int g = 1;
    int level = 1;  // δ

    int size() const {
        int s = 1;
        for (int i = 0; i < g; ++i) s *= level;
        return s;
    }
    std::vector<int> tuple(int linear) const;
    int linear(const std::vector<int>& t) const;
    int add(int a, int b) const;
    int neg(int a) const;
    bool operator==(const IndexGroup& o) const { return g == o.g && level == o.level; }
};

// (x, y) -> ℓx + ny componentwise, an isomorphism Z(n̄) x Z(ℓ̄) -> Z(ℓn̄) when
// gcd(ℓ, n) = 1.
int rho(const IndexGroup& zn, const IndexGroup& zl, int x, int y);
std::pair<int, int> rho_split(const IndexGroup& zn, const IndexGroup& zl, int u);

// Componentwise scaling x_i -> (δ'/δ)·x_i along Z(δ̄) -> Z(δ̄').
int embed_index(const IndexGroup& from, const IndexGroup& to, int x);

struct ThetaPoint {
    IndexGroup grp;
    std::vector<FieldElement> coords;  // canonical index order
    enum Kind { Projective, Affine } kind = Projective;

    const FieldContext* ctx() const { return coords.empty() ? nullptr : coords[0].ctx(); }
    ThetaPoint lift_to(const FieldContext* target) const;
};

// Projective comparison of coordinate vectors (all-zero vectors never match).
bool proj_equal(const std::vector<FieldElement>& a, const std::vector<FieldElement>& b);
// Scale so the first nonzero coordinate is 1.
std::vector<FieldElement> proj_normalize(const std::vector<FieldElement>& v);

// --- relation generation -----------------------------------------------------

// Variable set x_u, u in canonical order of Z(δ̄); names "x<linear index>".
VarsPtr theta_variable_set(const IndexGroup& grp);

// Degree-4 Riemann relations at level δ (2 | δ) plus the linear symmetry
// relations x_u - x_{-u}, deduplicated, deterministic order.
std::vector<Polynomial> riemann_relations(const FieldContext* ctx, const IndexGroup& grp);

// Quadrics in the point variables y_u cutting out the abelian variety with
// theta null point b.  Throws InvalidNullPoint when b fails its own relations.
std::vector<Polynomial> variety_relations(const ThetaPoint& b);

bool satisfies_relations(const std::vector<Polynomial>& rels, const std::vector<FieldElement>& point);

// The specialized ideal J: level-ℓn relations with x_{-u} identified with x_u
// and the embedded Z(n̄) coordinates bound to b.
struct ThetaSystem {
    int g = 1, n = 1, ell = 1;
    IndexGroup big;                      // Z(ℓn̄)
    const FieldContext* ctx = nullptr;
    ThetaPoint b;
    VarsPtr vars;                        // one variable per free symmetry class
    std::vector<int> var_of_index;       // linear index -> variable id, -1 when bound
    std::vector<FieldElement> bound_of_index;  // valid where var_of_index < 0
    std::vector<int> rep_of_var;         // variable id -> representative index
    std::vector<Polynomial> polys;

    // Expand an assignment of the free variables into the full coordinate
    // vector over the assignment's field.
    std::vector<FieldElement> full_coords(const std::vector<FieldElement>& values) const;
};

ThetaSystem build_J(const ThetaPoint& b, int ell);

// --- projections and actions -------------------------------------------------

// Slice (a_{ℓu})_u plus the factor ω with slice = ω·b (ω = 1 when b is null).
std::pair<ThetaPoint, FieldElement> pi1(const ThetaPoint& a, int ell, const ThetaPoint* b = nullptr);

// c_u = Σ_{t in Z(ℓ̄)} a_{ρ(u, t)}.
ThetaPoint pi2(const ThetaPoint& a, int ell);

// (α, i, j)·ϑ_k = α ζ^{-<j, k+i>} ϑ_{k+i}; ζ must have exact order δ.
ThetaPoint theta_translate(const ThetaPoint& a, const FieldElement& alpha, const std::vector<int>& i,
                           const std::vector<int>& j, const FieldElement& zeta);

struct ActionSpec {
    enum Type { IndexAuto, SymTwist } type = IndexAuto;
    // IndexAuto: g x g integer matrix acting on the ℓ-part (identity on the
    // n-part).  SymTwist: symmetric g x g matrix over Z/ℓ with a root of unity.
    std::vector<std::vector<int>> mat;
    FieldElement zeta;  // SymTwist only; exact order ℓ (ignored when mat = 0)

    static ActionSpec index_auto(std::vector<std::vector<int>> m);
    static ActionSpec sym_twist(std::vector<std::vector<int>> c, FieldElement zeta);
};

bool matrix_invertible_mod(const std::vector<std::vector<int>>& m, int ell);

ThetaPoint act(const ThetaPoint& a, int n, int ell, const ActionSpec& spec);

// P_i = (a_{ρ(j, i)})_{j in Z(n̄)}, normalized; absent when the slice vanishes.
std::vector<std::optional<std::vector<FieldElement>>> extract_Pi(const ThetaPoint& a, int n, int ell);

struct Classification {
    enum Tag { Valid, DegenerateUndefined, DegenerateNotRankG } tag;
    std::vector<std::optional<std::vector<FieldElement>>> P;
};

Classification classify(const ThetaPoint& a, int n, int ell);

// Closure of {a} under the invertible index actions and the symmetric twists.
std::vector<ThetaPoint> orbit(const ThetaPoint& a, int n, int ell, const FieldElement& zeta);

// Zero the slices outside the subgroup S of Z(ℓ̄) after applying psi2.
ThetaPoint make_degenerate(const ThetaPoint& a, int n, int ell, const std::vector<int>& S,
                           const std::vector<std::vector<int>>& psi2);

long long count_valid(int g, int ell);
long long count_classes(int g, int ell);
long long orbit_order(int g, int ell);

// All invertible / all symmetric g x g matrices over Z/ℓ, deterministic order.
std::vector<std::vector<std::vector<int>>> invertible_matrices_mod(int g, int ell);
std::vector<std::vector<std::vector<int>>> symmetric_matrices_mod(int g, int ell);

// Members of the subgroup of Z(ℓ̄) generated by the given elements.
std::vector<int> subgroup_generated(const IndexGroup& zl, const std::vector<int>& gens);

bool canonical_point_less(const ThetaPoint& a, const ThetaPoint& b);

}  // namespace thetacorr

#endif
