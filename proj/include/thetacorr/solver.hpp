#ifndef THETACORR_SOLVER_HPP
#define THETACORR_SOLVER_HPP

#include <optional>
#include <string>
#include <vector>

#include "thetacorr/theta.hpp"

namespace thetacorr {

struct SolveFlags {
    bool char_ell_mode = false;
    bool allow_nu1 = false;
    int max_ext_degree = 64;
    int jobs = 1;
    int max_batches = 4096;
};

struct SolveConfig {
    uint64_t seed = 1;
    SolveFlags flags;
};

// Y-block schedule: one block per ±-class representative λ of Z(ℓ̄) \ {0};
// block variables are the symmetry classes of {ρ(v, λ) : v in Z(n̄)}.
struct BlockPlan {
    std::vector<int> lambdas;              // representative linear indices in Z(ℓ̄)
    std::vector<std::vector<int>> blocks;  // variable ids of sys.vars per block
};
BlockPlan plan_blocks(const ThetaSystem& sys);

struct SolutionRecord {
    ThetaPoint point;  // b-normalized affine coordinates over the unified field
    Classification cls;
    int class_id = -1;
    std::string tag_name() const;
    std::string provenance;
    std::optional<ThetaPoint> pi2_point;  // the isogenous null point (valid records)
    FieldElement omega;                   // pi1 proportionality factor (1 by normalization)
};

struct SolveResult {
    ThetaSystem system;
    ContextPtr base;
    ContextPtr field;                      // unified extension holding every record
    std::vector<ContextPtr> keep_alive;    // discovery towers
    std::vector<SolutionRecord> records;   // canonically sorted
    int num_valid = 0;
    int num_valid_classes = 0;
    int num_deg_not_rank = 0;
    int num_deg_undefined = 0;
    int step1_batches = 0;   // top-level elimination batches
    int j1_degree = 0;       // degree of the first block ideal
    bool used_zeta = false;  // orbit grouping via roots of unity vs P-subgroup fallback
};

// One partial or full point discovered over an extension tower.
struct DiscoveredSolution {
    std::vector<ContextPtr> chain;     // base first
    std::vector<FieldElement> values;  // per variable of the originating variable set
    std::string provenance;
};

struct Step1Result {
    std::vector<Polynomial> j1;  // generators of the block ideal, in block variables only
    VarsPtr y_vars;
    bool stopped_early = false;
    int batches = 0;
};

// Truncated elimination: partial-degree pair selection under a block order,
// stopping once the Y block is zero-dimensional.
Step1Result step1_eliminate(const std::vector<Polynomial>& system, const std::vector<uint8_t>& y_mask,
                            int max_batches);

// DRL basis, FGLM to lex, univariate factorization and triangular splitting
// over field extensions: the complete point set of a zero-dimensional ideal.
std::vector<DiscoveredSolution> step234_decompose(const std::vector<Polynomial>& j1, ContextPtr field,
                                                  const SolveConfig& cfg);

// Verifies that the full coordinate vector satisfies every generator of J.
bool verify_solution(const ThetaSystem& sys, const std::vector<FieldElement>& var_values);

SolveResult solve_VJ(const ThetaPoint& b, int ell, ContextPtr base, const SolveConfig& cfg);

// Oracle route: one full lex basis of J over the base field, triangular
// back-substitution, no elimination strategy.
SolveResult solve_VJ_naive(const ThetaPoint& b, int ell, ContextPtr base, const SolveConfig& cfg);

// Map elements of a tower chain into a containing field by matching each
// level's modulus to a root, deterministically.
struct ChainEmbedding {
    std::vector<ContextPtr> chain;
    ContextPtr target;
    std::vector<FieldElement> gen_images;  // per chain level >= 1
    FieldElement map(const FieldElement& e) const;
};
ChainEmbedding embed_chain(const std::vector<ContextPtr>& chain, ContextPtr target, uint64_t seed);

}  // namespace thetacorr

#endif
