#include <algorithm>
#include <map>

#include "thetacorr/gf.hpp"

namespace thetacorr {

namespace {

int canonical_cmp_poly(const UniPolynomial& a, const UniPolynomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    for (int i = a.degree(); i >= 0; --i) {
        int c = canonical_cmp(a.coeff(i), b.coeff(i));
        if (c) return c;
    }
    return 0;
}

// f with f' = 0 is of the form u(x^p); recover u.
UniPolynomial pth_root(const UniPolynomial& f) {
    const FieldContext* ctx = f.ctx();
    const uint64_t p = ctx->characteristic();
    const uint64_t root_steps = static_cast<uint64_t>(ctx->absolute_degree()) - 1;
    std::vector<FieldElement> cs;
    for (int i = 0; i <= f.degree(); i += static_cast<int>(p))
        cs.push_back(f.coeff(i).frobenius_p(root_steps));
    return UniPolynomial(ctx, std::move(cs));
}

// f = lc * prod h_i^{e_i} with the h_i monic, squarefree and pairwise coprime.
std::vector<std::pair<UniPolynomial, int>> squarefree_decomposition(const UniPolynomial& f_in) {
    UniPolynomial f = f_in.monic();
    std::vector<std::pair<UniPolynomial, int>> out;
    if (f.degree() <= 0) return out;
    const uint64_t p = f.ctx()->characteristic();
    UniPolynomial fp = f.derivative();
    if (fp.is_zero()) {
        for (auto& [h, e] : squarefree_decomposition(pth_root(f))) out.emplace_back(h, e * static_cast<int>(p));
        return out;
    }
    UniPolynomial c = upoly_gcd(f, fp);
    UniPolynomial w = f / c;
    int i = 1;
    while (!w.is_one()) {
        UniPolynomial y = upoly_gcd(w, c);
        UniPolynomial z = w / y;
        if (z.degree() > 0) out.emplace_back(z.monic(), i);
        w = y;
        c = c / y;
        ++i;
    }
    if (!c.is_one()) {
        for (auto& [h, e] : squarefree_decomposition(pth_root(c))) out.emplace_back(h, e * static_cast<int>(p));
    }
    return out;
}

// x^(q^k) mod f, where q is the size of f's coefficient field.
UniPolynomial frobenius_q_pow(const UniPolynomial& a, uint64_t k, const UniPolynomial& f) {
    return frobenius_pow_mod(a, k * static_cast<uint64_t>(f.ctx()->absolute_degree()), f);
}

// Cantor-Zassenhaus equal-degree splitting (odd characteristic): h is a monic
// squarefree product of irreducibles all of degree d.
void equal_degree_split(const UniPolynomial& h, int d, std::mt19937_64& rng,
                        std::vector<UniPolynomial>& out) {
    if (h.degree() == d) {
        out.push_back(h);
        return;
    }
    const FieldContext* ctx = h.ctx();
    const uint64_t p = ctx->characteristic();
    const uint64_t steps = static_cast<uint64_t>(ctx->absolute_degree()) * static_cast<uint64_t>(d);
    while (true) {
        std::vector<FieldElement> cs;
        for (int i = 0; i < h.degree(); ++i) cs.push_back(ctx->random_element(rng));
        UniPolynomial a(ctx, std::move(cs));
        if (a.degree() < 1) continue;
        UniPolynomial g = upoly_gcd(a, h);
        if (g.degree() > 0 && g.degree() < h.degree()) {
            equal_degree_split(g, d, rng, out);
            equal_degree_split(h / g, d, rng, out);
            return;
        }
        // a^((q^d - 1) / 2) = (a^(1 + p + ... + p^(steps-1)))^((p - 1) / 2)
        UniPolynomial t = a % h;
        for (uint64_t i = 1; i < steps; ++i) t = (pow_mod(t, p, h) * a) % h;
        UniPolynomial s = pow_mod(t, (p - 1) / 2, h);
        UniPolynomial g2 = upoly_gcd(s - UniPolynomial::constant(ctx->one()), h);
        if (g2.degree() > 0 && g2.degree() < h.degree()) {
            equal_degree_split(g2, d, rng, out);
            equal_degree_split(h / g2, d, rng, out);
            return;
        }
    }
}

// Distinct-degree stage on a monic squarefree input: (product, degree) pairs.
std::vector<std::pair<UniPolynomial, int>> distinct_degree(const UniPolynomial& f_in) {
    std::vector<std::pair<UniPolynomial, int>> out;
    UniPolynomial f = f_in;
    const FieldContext* ctx = f.ctx();
    UniPolynomial w = UniPolynomial::x(ctx) % f;
    int d = 0;
    while (f.degree() > 0) {
        ++d;
        if (2 * d > f.degree()) {
            out.emplace_back(f, f.degree());
            break;
        }
        w = frobenius_q_pow(w, 1, f);
        UniPolynomial g = upoly_gcd(w - UniPolynomial::x(ctx), f);
        if (g.degree() > 0) {
            out.emplace_back(g, d);
            f = f / g;
            w = w % f;
        }
    }
    return out;
}

}  // namespace

bool is_irreducible(const UniPolynomial& f) {
    if (f.is_zero()) throw ZeroPolynomial("irreducibility of zero polynomial");
    const int n = f.degree();
    if (n == 0) return false;
    if (n == 1) return true;
    const FieldContext* ctx = f.ctx();
    UniPolynomial x = UniPolynomial::x(ctx);
    UniPolynomial m = f.monic();
    if (!(frobenius_q_pow(x, static_cast<uint64_t>(n), m) % m == x % m)) return false;
    for (uint64_t r : prime_factors(static_cast<uint64_t>(n))) {
        UniPolynomial v = frobenius_q_pow(x, static_cast<uint64_t>(n) / r, m);
        if (upoly_gcd(v - x, m).degree() != 0) return false;
    }
    return true;
}

UniPolynomial find_irreducible(const ContextPtr& ctx, int degree, uint64_t seed) {
    if (degree < 1) throw Error("find_irreducible: degree must be >= 1");
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + static_cast<uint64_t>(degree));
    while (true) {
        std::vector<FieldElement> cs;
        for (int i = 0; i < degree; ++i) cs.push_back(ctx->random_element(rng));
        cs.push_back(ctx->one());
        UniPolynomial cand(ctx.get(), std::move(cs));
        if (is_irreducible(cand)) return cand;
    }
}

FieldElement root_of_unity(const ContextPtr& ctx, uint64_t m) {
    if (m == 0) throw Error("root_of_unity: m must be >= 1");
    if (m == 1) return ctx->one();
    if (ctx->order_mod(m) != 0) throw NoSuchRoot("m does not divide q - 1");
    std::vector<uint64_t> rs = prime_factors(m);
    FieldElement z = ctx->zero();
    while (ctx->next_element(z)) {
        if (!z.pow(m).is_one()) continue;
        bool exact = true;
        for (uint64_t r : rs) {
            if (z.pow(m / r).is_one()) {
                exact = false;
                break;
            }
        }
        if (exact) return z;
    }
    throw NoSuchRoot("no element of exact order found");  // unreachable for valid inputs
}

std::vector<std::pair<UniPolynomial, int>> factor_univariate(const UniPolynomial& f, uint64_t seed) {
    if (f.is_zero()) throw ZeroPolynomial("factoring the zero polynomial");
    std::vector<std::pair<UniPolynomial, int>> out;
    if (f.degree() == 0) return out;
    std::mt19937_64 rng(seed * 0xda942042e4dd58b5ull + 1);
    for (const auto& [h, mult] : squarefree_decomposition(f)) {
        for (const auto& [prod, d] : distinct_degree(h)) {
            std::vector<UniPolynomial> irr;
            equal_degree_split(prod, d, rng, irr);
            for (auto& g : irr) out.emplace_back(std::move(g), mult);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        int c = canonical_cmp_poly(a.first, b.first);
        if (c) return c < 0;
        return a.second < b.second;
    });
    return out;
}

UniPolynomial squarefree_part(const UniPolynomial& f) {
    if (f.is_zero()) throw ZeroPolynomial("squarefree part of zero polynomial");
    UniPolynomial out = UniPolynomial::constant(f.ctx()->one());
    for (const auto& [h, mult] : squarefree_decomposition(f)) out = out * h;
    return out;
}

std::vector<FieldElement> roots_in_field(const UniPolynomial& f, uint64_t seed) {
    std::vector<FieldElement> roots;
    for (const auto& [g, mult] : factor_univariate(f, seed)) {
        if (g.degree() == 1) roots.push_back(-g.coeff(0));
    }
    std::sort(roots.begin(), roots.end(), canonical_less);
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

}  // namespace thetacorr
