#include <algorithm>
#include <set>
#include <unordered_set>

#include "thetacorr/mpoly.hpp"

namespace thetacorr {

namespace {

struct Pair {
    int i, j;  // i < j
    Monomial lcm;
    int key;        // selection key: deg_X(lcm) or deg(lcm)
    int total_deg;  // tie break
};

int pair_key(const Monomial& lcm, const GroebnerOptions& opts, const VariableSet& vars) {
    if (opts.selection == GroebnerOptions::PartialDegreeX && vars.has_blocks())
        return lcm.degree_masked(vars.y_mask, /*in_y=*/false);
    return lcm.degree();
}

bool poly_in_y(const Polynomial& p) {
    const auto& mask = p.vars()->y_mask;
    for (const auto& [m, c] : p.terms())
        for (int i = 0; i < m.arity(); ++i)
            if (m.e[i] && !mask[i]) return false;
    return true;
}

// True once the leading terms contain a pure power of every Y variable: the
// ideal spanned by `ypolys` is then visibly zero-dimensional in k[Y].
bool y_block_zero_dimensional(const std::vector<Polynomial>& ypolys) {
    if (ypolys.empty()) return false;
    const auto& mask = ypolys[0].vars()->y_mask;
    const int n = ypolys[0].vars()->arity();
    std::vector<bool> covered(n, false);
    for (const auto& p : ypolys) {
        if (p.is_zero()) continue;
        if (p.is_constant()) return true;  // unit ideal
        const Monomial& lm = p.leading_monomial();
        int nz = -1;
        bool pure = true;
        for (int i = 0; i < n; ++i) {
            if (lm.e[i]) {
                if (nz >= 0) {
                    pure = false;
                    break;
                }
                nz = i;
            }
        }
        if (pure && nz >= 0) covered[nz] = true;
    }
    for (int i = 0; i < n; ++i)
        if (mask[i] && !covered[i]) return false;
    return true;
}

uint64_t pair_id(int i, int j) { return (static_cast<uint64_t>(i) << 32) | static_cast<uint32_t>(j); }

}  // namespace

std::vector<Polynomial> interreduce(std::vector<Polynomial> G) {
    // drop zeros, make monic
    std::vector<Polynomial> H;
    for (auto& g : G)
        if (!g.is_zero()) H.push_back(g.monic());
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < H.size(); ++i) {
            Polynomial g = H[i];
            std::vector<Polynomial> others;
            others.reserve(H.size() - 1);
            for (size_t j = 0; j < H.size(); ++j)
                if (j != i) others.push_back(H[j]);
            Polynomial r = normal_form(g, others);
            if (!(r == g)) {
                changed = true;
                if (r.is_zero()) {
                    H.erase(H.begin() + static_cast<long>(i));
                    --i;
                } else {
                    H[i] = r.monic();
                }
            }
        }
    }
    std::sort(H.begin(), H.end(), [](const Polynomial& a, const Polynomial& b) {
        return a.order().cmp(a.leading_monomial(), b.leading_monomial()) > 0;
    });
    return H;
}

GroebnerResult buchberger(std::vector<Polynomial> F, const MonomialOrder& order,
                          const GroebnerOptions& opts) {
    GroebnerResult res;
    std::vector<Polynomial> G;
    for (auto& f : F) {
        if (f.is_zero()) continue;
        G.push_back(f.resorted(order));
    }
    if (G.empty()) return res;
    const VarsPtr vars = G[0].vars();
    for (const auto& g : G)
        if (g.vars()->arity() != vars->arity()) throw InconsistentArity();
    G = interreduce(std::move(G));

    std::vector<Pair> pending;
    auto push_pair = [&](int i, int j) {
        Pair p;
        p.i = i;
        p.j = j;
        p.lcm = Monomial::lcm(G[i].leading_monomial(), G[j].leading_monomial());
        p.key = pair_key(p.lcm, opts, *vars);
        p.total_deg = p.lcm.degree();
        pending.push_back(std::move(p));
    };
    for (int j = 1; j < static_cast<int>(G.size()); ++j)
        for (int i = 0; i < j; ++i) push_pair(i, j);

    std::unordered_set<uint64_t> done;  // treated or discarded pairs
    auto treated = [&](int a, int b) {
        if (a > b) std::swap(a, b);
        return done.count(pair_id(a, b)) > 0;
    };

    auto collect_y = [&]() {
        std::vector<Polynomial> ys;
        if (!vars->has_blocks()) return ys;
        for (const auto& g : G)
            if (poly_in_y(g)) ys.push_back(g);
        return interreduce(std::move(ys));
    };

    while (!pending.empty()) {
        if (opts.early_stop_zero_dim_y) {
            res.y_polys = collect_y();
            if (y_block_zero_dimensional(res.y_polys)) {
                res.stopped_early = true;
                res.basis = G;
                return res;
            }
            if (res.batches >= opts.max_batches)
                throw NotZeroDimensional("batch budget exhausted before the Y block became zero-dimensional (batches=" +
                                         std::to_string(res.batches) + ")");
        }
        int dmin = pending[0].key;
        for (const auto& p : pending) dmin = std::min(dmin, p.key);
        std::vector<Pair> batch;
        std::vector<Pair> rest;
        for (auto& p : pending) (p.key == dmin ? batch : rest).push_back(std::move(p));
        pending = std::move(rest);
        std::sort(batch.begin(), batch.end(), [&](const Pair& a, const Pair& b) {
            if (a.total_deg != b.total_deg) return a.total_deg < b.total_deg;
            int c = order.cmp(a.lcm, b.lcm);
            if (c) return c < 0;
            if (a.i != b.i) return a.i < b.i;
            return a.j < b.j;
        });
        for (const auto& p : batch) {
            done.insert(pair_id(p.i, p.j));
            if (opts.use_pair_criteria) {
                // first criterion: coprime leading monomials
                if (p.lcm == G[p.i].leading_monomial() * G[p.j].leading_monomial()) continue;
                // chain criterion
                bool skip = false;
                for (int k = 0; k < static_cast<int>(G.size()); ++k) {
                    if (k == p.i || k == p.j) continue;
                    if (G[k].leading_monomial().divides(p.lcm) && treated(p.i, k) && treated(p.j, k)) {
                        skip = true;
                        break;
                    }
                }
                if (skip) continue;
            }
            Polynomial s = spoly(G[p.i], G[p.j]);
            Polynomial r = normal_form(s, G);
            if (r.is_zero()) continue;
            r = r.monic();
            int newi = static_cast<int>(G.size());
            G.push_back(std::move(r));
            for (int i = 0; i < newi; ++i) push_pair(i, newi);
        }
        ++res.batches;
    }

    if (opts.early_stop_zero_dim_y) {
        res.y_polys = collect_y();
        res.stopped_early = false;
        res.basis = G;
        return res;
    }

    // reduce: minimalize then tail-reduce
    std::vector<Polynomial> minimal;
    for (size_t i = 0; i < G.size(); ++i) {
        bool redundant = false;
        for (size_t j = 0; j < G.size(); ++j) {
            if (i == j) continue;
            if (G[j].leading_monomial().divides(G[i].leading_monomial())) {
                if (G[i].leading_monomial() == G[j].leading_monomial() && i < j) continue;
                redundant = true;
                break;
            }
        }
        if (!redundant) minimal.push_back(G[i]);
    }
    res.basis = interreduce(std::move(minimal));
    return res;
}

bool is_groebner(const std::vector<Polynomial>& G) {
    std::vector<Polynomial> H;
    for (const auto& g : G)
        if (!g.is_zero()) H.push_back(g);
    for (size_t i = 0; i < H.size(); ++i) {
        for (size_t j = i + 1; j < H.size(); ++j) {
            Polynomial s = spoly(H[i], H[j]);
            if (!normal_form(s, H).is_zero()) return false;
        }
    }
    return true;
}

std::vector<Polynomial> eliminate(const std::vector<Polynomial>& F) {
    if (F.empty()) return {};
    const VarsPtr& vars = F[0].vars();
    if (!vars->has_blocks()) throw Error("eliminate: variable set has no block partition");
    MonomialOrder order = MonomialOrder::block_elim(vars->y_mask);
    GroebnerResult res = buchberger(F, order);
    std::vector<Polynomial> out;
    for (const auto& g : res.basis)
        if (poly_in_y(g)) out.push_back(g);
    return out;
}

bool is_zero_dimensional(const std::vector<Polynomial>& gb) {
    if (gb.empty()) return false;
    const int n = gb[0].vars()->arity();
    std::vector<bool> covered(n, false);
    for (const auto& p : gb) {
        if (p.is_zero()) continue;
        if (p.is_constant()) return true;
        const Monomial& lm = p.leading_monomial();
        int nz = -1;
        bool pure = true;
        for (int i = 0; i < n; ++i) {
            if (lm.e[i]) {
                if (nz >= 0) {
                    pure = false;
                    break;
                }
                nz = i;
            }
        }
        if (pure && nz >= 0) covered[nz] = true;
    }
    return std::all_of(covered.begin(), covered.end(), [](bool b) { return b; });
}

std::vector<Monomial> quotient_basis(const std::vector<Polynomial>& gb, size_t limit) {
    if (!is_zero_dimensional(gb)) throw NotZeroDimensional("quotient basis of a positive-dimensional ideal");
    const int n = gb.empty() ? 0 : gb[0].vars()->arity();
    std::vector<Monomial> lts;
    for (const auto& p : gb)
        if (!p.is_zero()) lts.push_back(p.leading_monomial());
    auto under_staircase = [&](const Monomial& m) {
        for (const auto& lt : lts)
            if (lt.divides(m)) return false;
        return true;
    };
    std::set<std::vector<uint16_t>> seen;
    std::vector<Monomial> out;
    std::vector<Monomial> queue;
    Monomial one = Monomial::one(n);
    if (!under_staircase(one)) return out;  // unit ideal: empty staircase
    queue.push_back(one);
    seen.insert(one.e);
    while (!queue.empty()) {
        Monomial m = queue.back();
        queue.pop_back();
        out.push_back(m);
        if (out.size() > limit) throw NotZeroDimensional("staircase limit exceeded");
        for (int i = 0; i < n; ++i) {
            Monomial c = m;
            c.e[i] = static_cast<uint16_t>(c.e[i] + 1);
            if (seen.count(c.e)) continue;
            if (under_staircase(c)) {
                seen.insert(c.e);
                queue.push_back(c);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return a.e < b.e; });
    return out;
}

}  // namespace thetacorr
