#include <algorithm>
#include <numeric>
#include <set>

#include "thetacorr/theta.hpp"

namespace thetacorr {

std::vector<int> IndexGroup::tuple(int linear) const {
    std::vector<int> t(g);
    for (int i = g - 1; i >= 0; --i) {
        t[i] = linear % level;
        linear /= level;
    }
    return t;
}

int IndexGroup::linear(const std::vector<int>& t) const {
    int u = 0;
    for (int i = 0; i < g; ++i) u = u * level + ((t[i] % level + level) % level);
    return u;
}

int IndexGroup::add(int a, int b) const {
    auto ta = tuple(a), tb = tuple(b);
    for (int i = 0; i < g; ++i) ta[i] += tb[i];
    return linear(ta);
}

int IndexGroup::neg(int a) const {
    auto t = tuple(a);
    for (auto& x : t) x = -x;
    return linear(t);
}

int rho(const IndexGroup& zn, const IndexGroup& zl, int x, int y) {
    if (std::gcd(zn.level, zl.level) != 1) throw NotCoprime();
    IndexGroup big{zn.g, zn.level * zl.level};
    auto tx = zn.tuple(x), ty = zl.tuple(y);
    std::vector<int> t(zn.g);
    for (int i = 0; i < zn.g; ++i) t[i] = zl.level * tx[i] + zn.level * ty[i];
    return big.linear(t);
}

std::pair<int, int> rho_split(const IndexGroup& zn, const IndexGroup& zl, int u) {
    const int n = zn.level, ell = zl.level;
    if (std::gcd(n, ell) != 1) throw NotCoprime();
    IndexGroup big{zn.g, n * ell};
    // componentwise: x = ℓ^(-1) u mod n, y = n^(-1) u mod ℓ
    int ell_inv = 0, n_inv = 0;
    for (int i = 1; i < n; ++i)
        if ((ell % n) * i % n == 1) ell_inv = i;
    for (int i = 1; i < ell; ++i)
        if ((n % ell) * i % ell == 1) n_inv = i;
    if (n == 1) ell_inv = 0;
    if (ell == 1) n_inv = 0;
    auto tu = big.tuple(u);
    std::vector<int> tx(zn.g), ty(zn.g);
    for (int i = 0; i < zn.g; ++i) {
        tx[i] = (tu[i] % n) * ell_inv % n;
        ty[i] = (tu[i] % ell) * n_inv % ell;
    }
    return {zn.linear(tx), zl.linear(ty)};
}

int embed_index(const IndexGroup& from, const IndexGroup& to, int x) {
    if (from.g != to.g || to.level % from.level != 0) throw NotDivisible();
    int scale = to.level / from.level;
    auto t = from.tuple(x);
    for (auto& v : t) v *= scale;
    return to.linear(t);
}

ThetaPoint ThetaPoint::lift_to(const FieldContext* target) const {
    ThetaPoint p = *this;
    for (auto& c : p.coords) c = c.lift_to(target);
    return p;
}

bool proj_equal(const std::vector<FieldElement>& a, const std::vector<FieldElement>& b) {
    if (a.size() != b.size()) return false;
    // find a common field
    const FieldContext* ctx = a[0].ctx();
    if (b[0].ctx()->absolute_degree() > ctx->absolute_degree()) ctx = b[0].ctx();
    bool a_zero = true, b_zero = true;
    for (const auto& x : a) a_zero = a_zero && x.is_zero();
    for (const auto& x : b) b_zero = b_zero && x.is_zero();
    if (a_zero || b_zero) return false;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = i + 1; j < a.size(); ++j) {
            FieldElement lhs = a[i].lift_to(ctx) * b[j].lift_to(ctx);
            FieldElement rhs = a[j].lift_to(ctx) * b[i].lift_to(ctx);
            if (!(lhs == rhs)) return false;
        }
    return true;
}

std::vector<FieldElement> proj_normalize(const std::vector<FieldElement>& v) {
    for (const auto& x : v) {
        if (!x.is_zero()) {
            FieldElement inv = x.inv();
            std::vector<FieldElement> out;
            out.reserve(v.size());
            for (const auto& y : v) out.push_back(y * inv);
            return out;
        }
    }
    throw ZeroSlice("cannot normalize the zero vector");
}

std::pair<ThetaPoint, FieldElement> pi1(const ThetaPoint& a, int ell, const ThetaPoint* b) {
    const int n = a.grp.level / ell;
    if (n * ell != a.grp.level) throw Error("pi1: level not divisible by ℓ");
    IndexGroup zn{a.grp.g, n};
    std::vector<FieldElement> slice;
    slice.reserve(zn.size());
    for (int u = 0; u < zn.size(); ++u) slice.push_back(a.coords[embed_index(zn, a.grp, u)]);
    bool zero = std::all_of(slice.begin(), slice.end(), [](const FieldElement& c) { return c.is_zero(); });
    if (zero) throw ZeroSlice("pi1: embedded slice vanishes");
    FieldElement omega = a.ctx()->one();
    if (b) {
        for (int u = 0; u < zn.size(); ++u) {
            if (!b->coords[u].is_zero()) {
                omega = slice[u] / b->coords[u].lift_to(slice[u].ctx());
                break;
            }
        }
    }
    return {ThetaPoint{zn, std::move(slice), ThetaPoint::Projective}, omega};
}

ThetaPoint pi2(const ThetaPoint& a, int ell) {
    const int n = a.grp.level / ell;
    if (n * ell != a.grp.level) throw Error("pi2: level not divisible by ℓ");
    IndexGroup zn{a.grp.g, n}, zl{a.grp.g, ell};
    std::vector<FieldElement> out;
    out.reserve(zn.size());
    for (int u = 0; u < zn.size(); ++u) {
        FieldElement s = a.ctx()->zero();
        for (int t = 0; t < zl.size(); ++t) s = s + a.coords[rho(zn, zl, u, t)];
        out.push_back(s);
    }
    if (std::all_of(out.begin(), out.end(), [](const FieldElement& c) { return c.is_zero(); }))
        throw ZeroImage("pi2: image vanishes");
    return ThetaPoint{zn, std::move(out), ThetaPoint::Projective};
}

ThetaPoint theta_translate(const ThetaPoint& a, const FieldElement& alpha, const std::vector<int>& i,
                           const std::vector<int>& j, const FieldElement& zeta) {
    const IndexGroup& grp = a.grp;
    const int delta = grp.level;
    // ζ must have exact order δ
    if (!zeta.pow(static_cast<uint64_t>(delta)).is_one()) throw WrongRootOrder();
    for (uint64_t r : prime_factors(static_cast<uint64_t>(delta)))
        if (zeta.pow(static_cast<uint64_t>(delta) / r).is_one()) throw WrongRootOrder();
    int ilin = grp.linear(i);
    std::vector<FieldElement> out(grp.size(), a.ctx()->zero());
    for (int k = 0; k < grp.size(); ++k) {
        int src = grp.add(k, ilin);
        auto t = grp.tuple(src);
        long long dot = 0;
        for (int c = 0; c < grp.g; ++c) dot += static_cast<long long>(j[c]) * t[c];
        dot %= delta;
        if (dot < 0) dot += delta;
        // e_δ(k+i, -j) = ζ^{-<j, k+i>}
        FieldElement ph = zeta.pow(static_cast<uint64_t>((delta - dot) % delta));
        out[k] = alpha * ph * a.coords[src];
    }
    return ThetaPoint{grp, std::move(out), a.kind};
}

ActionSpec ActionSpec::index_auto(std::vector<std::vector<int>> m) {
    ActionSpec s;
    s.type = IndexAuto;
    s.mat = std::move(m);
    return s;
}

ActionSpec ActionSpec::sym_twist(std::vector<std::vector<int>> c, FieldElement zeta) {
    ActionSpec s;
    s.type = SymTwist;
    s.mat = std::move(c);
    s.zeta = std::move(zeta);
    return s;
}

bool matrix_invertible_mod(const std::vector<std::vector<int>>& m, int ell) {
    // Gaussian elimination over Z/ℓ (ℓ prime)
    const int g = static_cast<int>(m.size());
    std::vector<std::vector<int>> a = m;
    for (auto& row : a)
        for (auto& x : row) x = ((x % ell) + ell) % ell;
    for (int col = 0; col < g; ++col) {
        int piv = -1;
        for (int r = col; r < g; ++r)
            if (a[r][col] % ell != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return false;
        std::swap(a[col], a[piv]);
        int inv = 0;
        for (int i = 1; i < ell; ++i)
            if (a[col][col] * i % ell == 1) inv = i;
        for (int r = 0; r < g; ++r) {
            if (r == col) continue;
            int f = a[r][col] * inv % ell;
            for (int c = 0; c < g; ++c) a[r][c] = ((a[r][c] - f * a[col][c]) % ell + ell) % ell;
        }
    }
    return true;
}

ThetaPoint act(const ThetaPoint& a, int n, int ell, const ActionSpec& spec) {
    const IndexGroup& big = a.grp;
    const int g = big.g;
    if (big.level != n * ell) throw Error("act: level mismatch");
    IndexGroup zn{g, n}, zl{g, ell};
    std::vector<FieldElement> out(big.size(), a.ctx()->zero());
    if (spec.type == ActionSpec::IndexAuto) {
        for (int u = 0; u < big.size(); ++u) {
            auto [x, y] = rho_split(zn, zl, u);
            auto ty = zl.tuple(y);
            std::vector<int> my(g, 0);
            for (int r = 0; r < g; ++r) {
                long long s = 0;
                for (int c = 0; c < g; ++c) s += static_cast<long long>(spec.mat[r][c]) * ty[c];
                my[r] = static_cast<int>(((s % ell) + ell) % ell);
            }
            out[u] = a.coords[rho(zn, zl, x, zl.linear(my))];
        }
    } else {
        bool zero_mat = true;
        for (const auto& row : spec.mat)
            for (int x : row)
                if (((x % ell) + ell) % ell != 0) zero_mat = false;
        if (!zero_mat) {
            if (!spec.zeta.valid()) throw MissingRootOfUnity();
            if (!spec.zeta.pow(static_cast<uint64_t>(ell)).is_one() || spec.zeta.is_one())
                throw MissingRootOfUnity("twist root must have exact order ℓ");
        }
        for (int u = 0; u < big.size(); ++u) {
            auto t = big.tuple(u);
            long long q = 0;
            for (int r = 0; r < g; ++r)
                for (int c = 0; c < g; ++c)
                    q += static_cast<long long>(spec.mat[r][c]) * (t[r] % ell) * (t[c] % ell);
            q = ((q % ell) + ell) % ell;
            FieldElement f = (q == 0 || zero_mat) ? a.ctx()->one() : spec.zeta.pow(static_cast<uint64_t>(q));
            out[u] = f * a.coords[u];
        }
    }
    return ThetaPoint{big, std::move(out), a.kind};
}

std::vector<std::optional<std::vector<FieldElement>>> extract_Pi(const ThetaPoint& a, int n, int ell) {
    IndexGroup zn{a.grp.g, n}, zl{a.grp.g, ell};
    std::vector<std::optional<std::vector<FieldElement>>> out(zl.size());
    for (int i = 0; i < zl.size(); ++i) {
        std::vector<FieldElement> slice;
        slice.reserve(zn.size());
        bool zero = true;
        for (int j = 0; j < zn.size(); ++j) {
            slice.push_back(a.coords[rho(zn, zl, j, i)]);
            zero = zero && slice.back().is_zero();
        }
        if (!zero) out[i] = proj_normalize(slice);
    }
    return out;
}

Classification classify(const ThetaPoint& a, int n, int ell) {
    Classification cls;
    cls.P = extract_Pi(a, n, ell);
    bool all_defined = true;
    for (const auto& p : cls.P) all_defined = all_defined && p.has_value();
    if (!all_defined) {
        cls.tag = Classification::DegenerateUndefined;
        return cls;
    }
    for (size_t i = 0; i < cls.P.size(); ++i)
        for (size_t j = i + 1; j < cls.P.size(); ++j)
            if (proj_equal(*cls.P[i], *cls.P[j])) {
                cls.tag = Classification::DegenerateNotRankG;
                return cls;
            }
    cls.tag = Classification::Valid;
    return cls;
}

std::vector<std::vector<std::vector<int>>> invertible_matrices_mod(int g, int ell) {
    std::vector<std::vector<std::vector<int>>> out;
    const int cells = g * g;
    long long total = 1;
    for (int i = 0; i < cells; ++i) total *= ell;
    for (long long code = 0; code < total; ++code) {
        long long c = code;
        std::vector<std::vector<int>> m(g, std::vector<int>(g));
        for (int r = 0; r < g; ++r)
            for (int cc = 0; cc < g; ++cc) {
                m[r][cc] = static_cast<int>(c % ell);
                c /= ell;
            }
        if (matrix_invertible_mod(m, ell)) out.push_back(std::move(m));
    }
    return out;
}

std::vector<std::vector<std::vector<int>>> symmetric_matrices_mod(int g, int ell) {
    std::vector<std::vector<std::vector<int>>> out;
    const int cells = g * (g + 1) / 2;
    long long total = 1;
    for (int i = 0; i < cells; ++i) total *= ell;
    for (long long code = 0; code < total; ++code) {
        long long c = code;
        std::vector<std::vector<int>> m(g, std::vector<int>(g, 0));
        for (int r = 0; r < g; ++r)
            for (int cc = r; cc < g; ++cc) {
                m[r][cc] = m[cc][r] = static_cast<int>(c % ell);
                c /= ell;
            }
        out.push_back(std::move(m));
    }
    return out;
}

bool canonical_point_less(const ThetaPoint& a, const ThetaPoint& b) {
    for (size_t i = 0; i < a.coords.size(); ++i) {
        int c = canonical_cmp(a.coords[i], b.coords[i]);
        if (c) return c < 0;
    }
    return false;
}

std::vector<ThetaPoint> orbit(const ThetaPoint& a, int n, int ell, const FieldElement& zeta) {
    if (!zeta.valid() || !zeta.pow(static_cast<uint64_t>(ell)).is_one() || zeta.is_one())
        throw MissingRootOfUnity("orbit needs a root of unity of exact order ℓ");
    std::vector<ThetaPoint> out;
    auto mats = invertible_matrices_mod(a.grp.g, ell);
    auto syms = symmetric_matrices_mod(a.grp.g, ell);
    for (const auto& m : mats) {
        ThetaPoint p = act(a, n, ell, ActionSpec::index_auto(m));
        for (const auto& c : syms) out.push_back(act(p, n, ell, ActionSpec::sym_twist(c, zeta)));
    }
    std::sort(out.begin(), out.end(), canonical_point_less);
    out.erase(std::unique(out.begin(), out.end(),
                          [](const ThetaPoint& x, const ThetaPoint& y) { return x.coords == y.coords; }),
              out.end());
    return out;
}

std::vector<int> subgroup_generated(const IndexGroup& zl, const std::vector<int>& gens) {
    std::set<int> members{0};
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<int> cur(members.begin(), members.end());
        for (int a : cur)
            for (int g : gens) {
                int s = zl.add(a, g);
                if (members.insert(s).second) grew = true;
            }
    }
    return std::vector<int>(members.begin(), members.end());
}

ThetaPoint make_degenerate(const ThetaPoint& a, int n, int ell, const std::vector<int>& S,
                           const std::vector<std::vector<int>>& psi2) {
    if (S.empty()) throw EmptySubgroup();
    ThetaPoint p = act(a, n, ell, ActionSpec::index_auto(psi2));
    IndexGroup zn{a.grp.g, n}, zl{a.grp.g, ell};
    std::set<int> keep(S.begin(), S.end());
    if (!keep.count(0)) throw EmptySubgroup("S must be a subgroup (contain 0)");
    for (int u = 0; u < a.grp.size(); ++u) {
        auto [x, y] = rho_split(zn, zl, u);
        (void)x;
        if (!keep.count(y)) p.coords[u] = a.ctx()->zero();
    }
    return p;
}

long long orbit_order(int g, int ell) {
    if (g == 1) return static_cast<long long>(ell) * (ell - 1);
    if (g == 2) {
        long long l = ell;
        return (l * l - 1) * (l * l - l) * l * l * l;
    }
    throw UnsupportedGenus("counting formulas cover g in {1, 2}");
}

long long count_classes(int g, int ell) {
    if (g == 1) return ell + 1;
    if (g == 2) {
        long long l = ell;
        return (l * l + 1) * (l + 1);
    }
    throw UnsupportedGenus("counting formulas cover g in {1, 2}");
}

long long count_valid(int g, int ell) { return count_classes(g, ell) * orbit_order(g, ell); }

}  // namespace thetacorr
