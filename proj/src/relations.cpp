#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_set>

#include "thetacorr/theta.hpp"

namespace thetacorr {

VarsPtr theta_variable_set(const IndexGroup& grp) {
    std::vector<std::string> names;
    names.reserve(grp.size());
    for (int u = 0; u < grp.size(); ++u) names.push_back("x" + std::to_string(u));
    return make_vars(std::move(names));
}

namespace {

// Enumeration of the doubled group Z(2δ̄) restricted to one parity class; the
// halving map sends even elements of Z(2δ̄) back to Z(δ̄).
struct DoubledGroup {
    IndexGroup grp;   // Z(δ̄)
    IndexGroup twice;  // Z(2δ̄)

    explicit DoubledGroup(const IndexGroup& g) : grp(g), twice{g.g, 2 * g.level} {}

    // (a + b) / 2 and (a - b) / 2 in Z(δ̄), for a ≡ b (mod 2)
    int half_sum(int a, int b) const {
        auto ta = twice.tuple(a), tb = twice.tuple(b);
        std::vector<int> s(grp.g);
        for (int i = 0; i < grp.g; ++i) s[i] = ((ta[i] + tb[i]) % twice.level) / 2;
        return grp.linear(s);
    }
    int half_diff(int a, int b) const {
        auto ta = twice.tuple(a), tb = twice.tuple(b);
        std::vector<int> s(grp.g);
        for (int i = 0; i < grp.g; ++i) s[i] = ((ta[i] - tb[i] + twice.level) % twice.level) / 2;
        return grp.linear(s);
    }
    // elements of Z(2δ̄) with the given parity vector
    std::vector<int> parity_class(const std::vector<int>& par) const {
        std::vector<int> out;
        std::vector<int> t(grp.g, 0);
        int count = grp.size();
        for (int k = 0; k < count; ++k) {
            int rem = k;
            for (int i = grp.g - 1; i >= 0; --i) {
                t[i] = par[i] + 2 * (rem % grp.level);
                rem /= grp.level;
            }
            out.push_back(twice.linear(t));
        }
        std::sort(out.begin(), out.end());
        return out;
    }
};

std::vector<std::vector<int>> bit_vectors(int g) {
    std::vector<std::vector<int>> out;
    for (int m = 0; m < (1 << g); ++m) {
        std::vector<int> v(g);
        for (int i = 0; i < g; ++i) v[i] = (m >> i) & 1;
        out.push_back(v);
    }
    return out;
}

int chi_sign(const std::vector<int>& chi, const std::vector<int>& t) {
    int s = 0;
    for (size_t i = 0; i < chi.size(); ++i) s += chi[i] * t[i];
    return (s & 1) ? -1 : 1;
}

// A term factory abstracting over plain variables (riemann_relations) versus
// the symmetry-reduced, b-specialized variables of build_J.
struct TermSink {
    const FieldContext* ctx;
    VarsPtr vars;
    MonomialOrder order = MonomialOrder::grevlex();
    // per linear index: variable id or -1 (bound)
    const std::vector<int>* var_of_index;
    const std::vector<FieldElement>* bound_of_index;

    // quadratic sum Σ_t χ(t) x_{s+t̄} x_{d+t̄}
    Polynomial quad(const IndexGroup& grp, const std::vector<std::vector<int>>& tbar_shifts,
                    const std::vector<int>& chi, const std::vector<std::vector<int>>& tvals, int s,
                    int d) const {
        std::vector<Polynomial::Term> ts;
        for (size_t k = 0; k < tbar_shifts.size(); ++k) {
            int i1 = grp.add(s, grp.linear(tbar_shifts[k]));
            int i2 = grp.add(d, grp.linear(tbar_shifts[k]));
            FieldElement c = ctx->from_int(chi_sign(chi, tvals[k]));
            Monomial m = Monomial::one(vars->arity());
            bool zero = false;
            for (int idx : {i1, i2}) {
                int v = (*var_of_index)[idx];
                if (v >= 0) {
                    m.e[v] = static_cast<uint16_t>(m.e[v] + 1);
                } else {
                    const FieldElement& b = (*bound_of_index)[idx];
                    if (b.is_zero()) {
                        zero = true;
                        break;
                    }
                    c = c * b;
                }
            }
            if (!zero) ts.emplace_back(std::move(m), std::move(c));
        }
        return Polynomial::from_terms(ctx, vars, order, std::move(ts));
    }
};

// Emit the pairwise differences of the three matching products of the
// multiset {e0, e1, e2, e3} for one character; `sink` renders the quadratic
// sums.  Deduplicates into `seen` / `out`.
void emit_multiset(const DoubledGroup& dg, const TermSink& sink,
                   const std::vector<std::vector<int>>& tbars, const std::vector<std::vector<int>>& tvals,
                   const std::vector<int>& chi, const int e[4], std::unordered_set<std::string>& seen,
                   std::vector<Polynomial>& out, std::map<std::pair<int, int>, Polynomial>* memo) {
    auto F = [&](int a, int b) -> Polynomial {
        if (a > b) std::swap(a, b);
        if (memo) {
            auto it = memo->find({a, b});
            if (it != memo->end()) return it->second;
        }
        Polynomial p = sink.quad(dg.grp, tbars, chi, tvals, dg.half_sum(a, b), dg.half_diff(a, b));
        if (memo) memo->emplace(std::make_pair(a, b), p);
        return p;
    };
    Polynomial p1 = F(e[0], e[1]) * F(e[2], e[3]);
    Polynomial p2 = F(e[0], e[2]) * F(e[1], e[3]);
    Polynomial p3 = F(e[0], e[3]) * F(e[1], e[2]);
    auto push = [&](const Polynomial& a, const Polynomial& b) {
        Polynomial d = (a - b);
        if (d.is_zero()) return;
        d = d.monic();
        std::string key = d.canonical_key();
        if (seen.insert(std::move(key)).second) out.push_back(std::move(d));
    };
    push(p1, p2);
    push(p1, p3);
    push(p2, p3);
}

}  // namespace

std::vector<Polynomial> riemann_relations(const FieldContext* ctx, const IndexGroup& grp) {
    if (grp.level % 2 != 0) throw OddLevel("relation generation needs 2 | δ");
    if (ctx->characteristic() == 2) throw EvenCharacteristic();
    DoubledGroup dg(grp);
    VarsPtr vars = theta_variable_set(grp);

    std::vector<int> var_of_index(grp.size());
    for (int u = 0; u < grp.size(); ++u) var_of_index[u] = u;
    std::vector<FieldElement> bound;  // none

    TermSink sink{ctx, vars, MonomialOrder::grevlex(), &var_of_index, &bound};

    auto tvals = bit_vectors(grp.g);
    std::vector<std::vector<int>> tbars;
    for (const auto& t : tvals) {
        std::vector<int> sh(grp.g);
        for (int i = 0; i < grp.g; ++i) sh[i] = t[i] * (grp.level / 2);
        tbars.push_back(sh);
    }
    auto chis = bit_vectors(grp.g);

    std::unordered_set<std::string> seen;
    std::vector<Polynomial> out;

    for (const auto& par : bit_vectors(grp.g)) {
        auto cls = dg.parity_class(par);
        const int m = static_cast<int>(cls.size());
        for (const auto& chi : chis) {
            std::map<std::pair<int, int>, Polynomial> memo;
            for (int a = 0; a < m; ++a)
                for (int b = a; b < m; ++b)
                    for (int c = b; c < m; ++c)
                        for (int d = c; d < m; ++d) {
                            int e[4] = {cls[a], cls[b], cls[c], cls[d]};
                            emit_multiset(dg, sink, tbars, tvals, chi, e, seen, out, &memo);
                        }
        }
    }

    // symmetry relations x_u - x_{-u}
    for (int u = 0; u < grp.size(); ++u) {
        int v = grp.neg(u);
        if (u < v) {
            Polynomial d = make_variable(ctx, vars, MonomialOrder::grevlex(), u) -
                           make_variable(ctx, vars, MonomialOrder::grevlex(), v);
            out.push_back(std::move(d));
        }
    }
    return out;
}

bool satisfies_relations(const std::vector<Polynomial>& rels, const std::vector<FieldElement>& point) {
    for (const auto& r : rels)
        if (!eval_poly(r, point).is_zero()) return false;
    return true;
}

std::vector<Polynomial> variety_relations(const ThetaPoint& b) {
    const IndexGroup& grp = b.grp;
    const FieldContext* ctx = b.ctx();
    if (!satisfies_relations(riemann_relations(ctx, grp), b.coords))
        throw InvalidNullPoint("null point fails its own relations");
    DoubledGroup dg(grp);

    std::vector<std::string> names;
    for (int u = 0; u < grp.size(); ++u) names.push_back("y" + std::to_string(u));
    VarsPtr vars = make_vars(std::move(names));

    auto tvals = bit_vectors(grp.g);
    std::vector<std::vector<int>> tbars;
    for (const auto& t : tvals) {
        std::vector<int> sh(grp.g);
        for (int i = 0; i < grp.g; ++i) sh[i] = t[i] * (grp.level / 2);
        tbars.push_back(sh);
    }

    // theta-side quadric and b-side constant
    auto Ftheta = [&](const std::vector<int>& chi, int s, int d) {
        std::vector<Polynomial::Term> ts;
        for (size_t k = 0; k < tbars.size(); ++k) {
            int i1 = grp.add(s, grp.linear(tbars[k]));
            int i2 = grp.add(d, grp.linear(tbars[k]));
            Monomial m = Monomial::one(vars->arity());
            m.e[i1] = static_cast<uint16_t>(m.e[i1] + 1);
            m.e[i2] = static_cast<uint16_t>(m.e[i2] + 1);
            ts.emplace_back(std::move(m), ctx->from_int(chi_sign(chi, tvals[k])));
        }
        return Polynomial::from_terms(ctx, vars, MonomialOrder::grevlex(), std::move(ts));
    };
    auto Fb = [&](const std::vector<int>& chi, int s, int d) {
        FieldElement acc = ctx->zero();
        for (size_t k = 0; k < tbars.size(); ++k) {
            int i1 = grp.add(s, grp.linear(tbars[k]));
            int i2 = grp.add(d, grp.linear(tbars[k]));
            FieldElement c = ctx->from_int(chi_sign(chi, tvals[k]));
            acc = acc + c * b.coords[i1] * b.coords[i2];
        }
        return acc;
    };

    std::unordered_set<std::string> seen;
    std::vector<Polynomial> out;

    for (const auto& par : bit_vectors(grp.g)) {
        auto cls = dg.parity_class(par);
        const int m = static_cast<int>(cls.size());
        for (const auto& chi : bit_vectors(grp.g)) {
            for (int xi = 0; xi < m; ++xi) {
                int x = cls[xi];
                for (int a = 0; a < m; ++a)
                    for (int bb = a; bb < m; ++bb)
                        for (int c = bb; c < m; ++c) {
                            int mate[3] = {cls[a], cls[bb], cls[c]};
                            // three mixed products: mate k joins x on the theta side
                            Polynomial prods[3];
                            for (int k = 0; k < 3; ++k) {
                                int o1 = mate[(k + 1) % 3], o2 = mate[(k + 2) % 3];
                                prods[k] = Ftheta(chi, dg.half_sum(x, mate[k]), dg.half_diff(x, mate[k]))
                                               .scaled(Fb(chi, dg.half_sum(o1, o2), dg.half_diff(o1, o2)));
                            }
                            auto push = [&](const Polynomial& u, const Polynomial& v) {
                                Polynomial d = u - v;
                                if (d.is_zero()) return;
                                d = d.monic();
                                std::string key = d.canonical_key();
                                if (seen.insert(std::move(key)).second) out.push_back(std::move(d));
                            };
                            push(prods[0], prods[1]);
                            push(prods[0], prods[2]);
                            push(prods[1], prods[2]);
                        }
            }
        }
    }
    return out;
}

ThetaSystem build_J(const ThetaPoint& b, int ell) {
    const IndexGroup& zn = b.grp;
    const int g = zn.g, n = zn.level;
    if (ell % 2 == 0) throw EvenEll("ℓ must be odd");
    if (std::gcd(ell, n) != 1) throw NotCoprime("gcd(ℓ, n) must be 1");
    const FieldContext* ctx = b.ctx();
    if (!satisfies_relations(riemann_relations(ctx, zn), b.coords))
        throw InvalidNullPoint("null point fails its own level-n relations");

    ThetaSystem sys;
    sys.g = g;
    sys.n = n;
    sys.ell = ell;
    sys.big = IndexGroup{g, ell * n};
    sys.ctx = ctx;
    sys.b = b;

    const IndexGroup& big = sys.big;
    sys.var_of_index.assign(big.size(), -1);
    sys.bound_of_index.assign(big.size(), ctx->zero());

    // bind the embedded Z(n̄) coordinates, identify x_{-u} with x_u elsewhere
    std::vector<std::string> names;
    for (int u = 0; u < big.size(); ++u) {
        auto t = big.tuple(u);
        bool embedded = true;
        for (int i = 0; i < g; ++i)
            if (t[i] % ell != 0) embedded = false;
        if (embedded) {
            std::vector<int> w(g);
            for (int i = 0; i < g; ++i) w[i] = t[i] / ell;
            sys.bound_of_index[u] = b.coords[zn.linear(w)];
            continue;
        }
        int r = std::min(u, big.neg(u));
        if (r == u) {
            sys.var_of_index[u] = static_cast<int>(names.size());
            sys.rep_of_var.push_back(u);
            names.push_back("x" + std::to_string(u));
        }
    }
    sys.vars = make_vars(names);
    for (int u = 0; u < big.size(); ++u) {
        int r = std::min(u, big.neg(u));
        if (r != u && sys.var_of_index[r] >= 0) sys.var_of_index[u] = sys.var_of_index[r];
    }

    DoubledGroup dg(big);
    TermSink sink{ctx, sys.vars, MonomialOrder::grevlex(), &sys.var_of_index, &sys.bound_of_index};

    auto tvals = bit_vectors(g);
    std::vector<std::vector<int>> tbars;
    for (const auto& t : tvals) {
        std::vector<int> sh(g);
        for (int i = 0; i < g; ++i) sh[i] = t[i] * (big.level / 2);
        tbars.push_back(sh);
    }
    auto chis = bit_vectors(g);

    std::unordered_set<std::string> seen;
    for (const auto& par : bit_vectors(g)) {
        auto cls = dg.parity_class(par);
        const int m = static_cast<int>(cls.size());
        for (const auto& chi : chis) {
            std::map<std::pair<int, int>, Polynomial> memo;
            for (int a = 0; a < m; ++a)
                for (int bb = a; bb < m; ++bb)
                    for (int c = bb; c < m; ++c)
                        for (int d = c; d < m; ++d) {
                            int e[4] = {cls[a], cls[bb], cls[c], cls[d]};
                            emit_multiset(dg, sink, tbars, tvals, chi, e, seen, sys.polys, &memo);
                        }
        }
    }
    for (const auto& p : sys.polys) {
        if (!p.is_zero() && p.is_constant())
            throw InvalidNullPoint("specialized relation reduced to a nonzero constant");
    }
    return sys;
}

std::vector<FieldElement> ThetaSystem::full_coords(const std::vector<FieldElement>& values) const {
    const FieldContext* target = values.empty() ? ctx : values[0].ctx();
    std::vector<FieldElement> out;
    out.reserve(big.size());
    for (int u = 0; u < big.size(); ++u) {
        if (var_of_index[u] >= 0) {
            out.push_back(values[var_of_index[u]]);
        } else {
            out.push_back(bound_of_index[u].lift_to(target));
        }
    }
    return out;
}

}  // namespace thetacorr
