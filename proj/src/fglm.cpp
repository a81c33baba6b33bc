#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "thetacorr/mpoly.hpp"

namespace thetacorr {

namespace {

// dense vector over the staircase with echelon bookkeeping
struct EchelonRow {
    std::vector<FieldElement> vec;    // reduced row
    std::vector<FieldElement> combo;  // coordinates over accepted staircase monomials
    int pivot;
};

}  // namespace

std::vector<Polynomial> fglm(const std::vector<Polynomial>& gb, const MonomialOrder& target) {
    if (gb.empty()) return {};
    const FieldContext* ctx = gb[0].ctx();
    const VarsPtr vars = gb[0].vars();
    const int n = vars->arity();
    const MonomialOrder& src = gb[0].order();

    std::vector<Monomial> B = quotient_basis(gb);
    const size_t dim = B.size();
    if (dim == 0) {
        // unit ideal
        return {make_constant(ctx, vars, target, ctx->one())};
    }
    std::map<std::vector<uint16_t>, size_t> b_index;
    for (size_t i = 0; i < dim; ++i) b_index[B[i].e] = i;

    auto nf_vector = [&](const Polynomial& p) {
        std::vector<FieldElement> v(dim, ctx->zero());
        Polynomial r = normal_form(p, gb);
        for (const auto& [m, c] : r.terms()) {
            auto it = b_index.find(m.e);
            if (it == b_index.end()) throw Error("fglm: normal form left the staircase");
            v[it->second] = c;
        }
        return v;
    };

    // multiplication maps: columns of x_v * B[j]
    std::vector<std::vector<std::vector<FieldElement>>> mult(n);
    for (int v = 0; v < n; ++v) {
        mult[v].resize(dim);
        for (size_t j = 0; j < dim; ++j) {
            Monomial m = B[j];
            m.e[v] = static_cast<uint16_t>(m.e[v] + 1);
            mult[v][j] = nf_vector(Polynomial::from_terms(ctx, vars, src, {{m, ctx->one()}}));
        }
    }
    auto apply_mult = [&](int v, const std::vector<FieldElement>& x) {
        std::vector<FieldElement> y(dim, ctx->zero());
        for (size_t j = 0; j < dim; ++j) {
            if (x[j].is_zero()) continue;
            const auto& col = mult[v][j];
            for (size_t i = 0; i < dim; ++i) {
                if (col[i].is_zero()) continue;
                y[i] = y[i] + col[i] * x[j];
            }
        }
        return y;
    };

    struct Cand {
        Monomial m;
        int parent_var;  // -1 for the unit monomial
        size_t parent_idx;
    };
    auto cmp = [&](const Cand& a, const Cand& b) { return target.cmp(a.m, b.m) > 0; };
    std::priority_queue<Cand, std::vector<Cand>, decltype(cmp)> heap(cmp);
    std::set<std::vector<uint16_t>> queued;

    heap.push({Monomial::one(n), -1, 0});
    queued.insert(Monomial::one(n).e);

    std::vector<Monomial> accepted;
    std::vector<std::vector<FieldElement>> accepted_vec;
    std::vector<EchelonRow> rows;
    std::vector<Monomial> lts;
    std::vector<Polynomial> out;

    while (!heap.empty()) {
        Cand c = heap.top();
        heap.pop();
        bool skip = false;
        for (const auto& lt : lts) {
            if (lt.divides(c.m)) {
                skip = true;
                break;
            }
        }
        if (skip) continue;

        std::vector<FieldElement> v;
        if (c.parent_var < 0) {
            v.assign(dim, ctx->zero());
            auto it = b_index.find(Monomial::one(n).e);
            if (it == b_index.end()) throw Error("fglm: 1 not in staircase");
            v[it->second] = ctx->one();
        } else {
            v = apply_mult(c.parent_var, accepted_vec[c.parent_idx]);
        }

        // reduce against echelon rows, tracking the combination
        std::vector<FieldElement> combo(accepted.size(), ctx->zero());
        std::vector<FieldElement> w = v;
        for (const auto& row : rows) {
            if (w[row.pivot].is_zero()) continue;
            FieldElement f = w[row.pivot];
            for (size_t i = 0; i < dim; ++i) w[i] = w[i] - f * row.vec[i];
            for (size_t i = 0; i < row.combo.size(); ++i) combo[i] = combo[i] + f * row.combo[i];
        }
        int pivot = -1;
        for (size_t i = 0; i < dim; ++i) {
            if (!w[i].is_zero()) {
                pivot = static_cast<int>(i);
                break;
            }
        }
        if (pivot < 0) {
            // dependency: c.m - sum combo_k * accepted_k is in the ideal
            std::vector<Polynomial::Term> ts;
            ts.emplace_back(c.m, ctx->one());
            for (size_t k = 0; k < accepted.size(); ++k)
                if (!combo[k].is_zero()) ts.emplace_back(accepted[k], -combo[k]);
            out.push_back(Polynomial::from_terms(ctx, vars, target, std::move(ts)));
            lts.push_back(c.m);
            continue;
        }
        // accept as a target-staircase monomial
        size_t idx = accepted.size();
        accepted.push_back(c.m);
        accepted_vec.push_back(v);
        FieldElement pinv = w[pivot].inv();
        EchelonRow row;
        row.pivot = pivot;
        row.vec.resize(dim);
        for (size_t i = 0; i < dim; ++i) row.vec[i] = w[i] * pinv;
        row.combo.resize(accepted.size(), ctx->zero());
        for (size_t i = 0; i < combo.size(); ++i) row.combo[i] = -combo[i] * pinv;
        row.combo[idx] = pinv;
        for (auto& r : rows) r.combo.resize(accepted.size(), ctx->zero());
        rows.push_back(std::move(row));

        for (int vvar = 0; vvar < n; ++vvar) {
            Monomial child = c.m;
            child.e[vvar] = static_cast<uint16_t>(child.e[vvar] + 1);
            if (queued.count(child.e)) continue;
            queued.insert(child.e);
            heap.push({child, vvar, idx});
        }
        if (accepted.size() > dim) throw Error("fglm: staircase grew past the quotient dimension");
    }

    std::sort(out.begin(), out.end(), [&](const Polynomial& a, const Polynomial& b) {
        return target.cmp(a.leading_monomial(), b.leading_monomial()) > 0;
    });
    return out;
}

}  // namespace thetacorr
