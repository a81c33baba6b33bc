#include "thetacorr/gf.hpp"

#include <algorithm>
#include <sstream>

namespace thetacorr {

namespace {

uint64_t addmod(uint64_t a, uint64_t b, uint64_t p) {
    uint64_t s = a + b;
    return s >= p ? s - p : s;
}
uint64_t submod(uint64_t a, uint64_t b, uint64_t p) { return a >= b ? a - b : a + p - b; }
uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
    return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % p);
}
uint64_t powmod(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}
uint64_t invmod(uint64_t a, uint64_t p) {
    // p prime
    if (a == 0) throw DivisionByZero();
    return powmod(a, p - 2, p);
}

}  // namespace

// Arithmetic between embeddable contexts lifts the shallower element; truly
// unrelated contexts are an error.
static bool align_elements(FieldElement& a, FieldElement& b, bool throw_on_mismatch = true) {
    if (a.ctx() == b.ctx()) return true;
    if (!a.ctx() || !b.ctx()) throw Error("uninitialized field element");
    if (a.ctx()->equals(*b.ctx())) return true;
    if (a.ctx()->has_ancestor(b.ctx())) {
        b = b.lift_to(a.ctx());
        return true;
    }
    if (b.ctx()->has_ancestor(a.ctx())) {
        a = a.lift_to(b.ctx());
        return true;
    }
    if (throw_on_mismatch) throw ContextMismatch();
    return false;
}

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    // deterministic Miller-Rabin for 64-bit inputs
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod(a % n, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

std::vector<uint64_t> prime_factors(uint64_t n) {
    std::vector<uint64_t> out;
    for (uint64_t q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0) n /= q;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// --- FieldElement ------------------------------------------------------------

bool FieldElement::is_zero() const {
    if (!ctx_) throw Error("uninitialized field element");
    if (ctx_->is_prime_field()) return res_ == 0;
    for (const auto& c : c_)
        if (!c.is_zero()) return false;
    return true;
}

bool FieldElement::is_one() const {
    if (ctx_->is_prime_field()) return res_ == 1;
    if (!c_[0].is_one()) return false;
    for (size_t i = 1; i < c_.size(); ++i)
        if (!c_[i].is_zero()) return false;
    return true;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    FieldElement a = *this, b = o;
    align_elements(a, b);
    if (a.ctx_->is_prime_field()) {
        a.res_ = addmod(a.res_, b.res_, a.ctx_->characteristic());
    } else {
        for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] = a.c_[i] + b.c_[i];
    }
    return a;
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    FieldElement a = *this, b = o;
    align_elements(a, b);
    if (a.ctx_->is_prime_field()) {
        a.res_ = submod(a.res_, b.res_, a.ctx_->characteristic());
    } else {
        for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] = a.c_[i] - b.c_[i];
    }
    return a;
}

FieldElement FieldElement::operator-() const {
    FieldElement r = *this;
    if (ctx_->is_prime_field()) {
        r.res_ = res_ ? ctx_->characteristic() - res_ : 0;
    } else {
        for (auto& c : r.c_) c = -c;
    }
    return r;
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    FieldElement a = *this, b = o;
    align_elements(a, b);
    if (a.ctx_->is_prime_field()) {
        a.res_ = mulmod(a.res_, b.res_, a.ctx_->characteristic());
        return a;
    }
    // schoolbook product, then reduce by the modulus
    const FieldContext* ctx = a.ctx_;
    const int d = ctx->degree();
    const FieldContext* bc = ctx->base();
    std::vector<FieldElement> prod(2 * d - 1, bc->zero());
    for (int i = 0; i < d; ++i) {
        if (a.c_[i].is_zero()) continue;
        for (int j = 0; j < d; ++j) {
            if (b.c_[j].is_zero()) continue;
            prod[i + j] = prod[i + j] + a.c_[i] * b.c_[j];
        }
    }
    const UniPolynomial& m = ctx->modulus();
    // reduce: for k from top down, fold prod[k] across m (m monic)
    for (int k = 2 * d - 2; k >= d; --k) {
        if (prod[k].is_zero()) continue;
        FieldElement c = prod[k];
        prod[k] = bc->zero();
        for (int j = 0; j < d; ++j) prod[k - d + j] = prod[k - d + j] - c * m.coeff(j);
    }
    prod.resize(d);
    return ctx->from_coeffs(std::move(prod));
}

FieldElement FieldElement::inv() const {
    if (is_zero()) throw DivisionByZero();
    if (ctx_->is_prime_field()) {
        FieldElement r = *this;
        r.res_ = invmod(res_, ctx_->characteristic());
        return r;
    }
    // extended euclid of (this as polynomial) and the modulus over base
    const FieldContext* bc = ctx_->base();
    UniPolynomial a(bc, c_);
    UniPolynomial m = ctx_->modulus();
    UniPolynomial r0 = m, r1 = a;
    UniPolynomial t0(bc), t1 = UniPolynomial::constant(bc->one());
    while (!r1.is_zero()) {
        auto [q, r2] = divrem(r0, r1);
        UniPolynomial t2 = t0 - q * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    // r0 = gcd (a unit since m is irreducible and a != 0)
    FieldElement lead_inv = r0.lead().inv();
    UniPolynomial t = t0 * lead_inv;
    std::vector<FieldElement> cs(ctx_->degree(), bc->zero());
    for (int i = 0; i <= t.degree(); ++i) cs[i] = t.coeff(i);
    return ctx_->from_coeffs(std::move(cs));
}

FieldElement FieldElement::operator/(const FieldElement& o) const { return *this * o.inv(); }

FieldElement FieldElement::pow(uint64_t e) const {
    FieldElement r = ctx_->one();
    FieldElement b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

FieldElement FieldElement::frobenius_p(uint64_t k) const {
    FieldElement r = *this;
    for (uint64_t i = 0; i < k; ++i) r = r.pow(ctx_->characteristic());
    return r;
}

bool FieldElement::operator==(const FieldElement& o) const {
    FieldElement a = *this, b = o;
    if (!align_elements(a, b, /*throw_on_mismatch=*/false)) return false;
    if (a.ctx_->is_prime_field()) return a.res_ == b.res_;
    return a.c_ == b.c_;
}

FieldElement FieldElement::lift_to(const FieldContext* target) const {
    if (target == ctx_ || target->equals(*ctx_)) return *this;
    if (!target->has_ancestor(ctx_)) throw ContextMismatch("cannot lift: not an ancestor context");
    FieldElement below = lift_to(target->base());
    std::vector<FieldElement> cs(target->degree(), target->base()->zero());
    cs[0] = below;
    return target->from_coeffs(std::move(cs));
}

std::string FieldElement::to_string() const {
    if (ctx_->is_prime_field()) return std::to_string(res_);
    std::ostringstream os;
    os << '[';
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ',';
        os << c_[i].to_string();
    }
    os << ']';
    return os.str();
}

int canonical_cmp(const FieldElement& a, const FieldElement& b) {
    if (a.ctx()->is_prime_field()) {
        if (a.residue() != b.residue()) return a.residue() < b.residue() ? -1 : 1;
        return 0;
    }
    const auto& ca = a.coeffs();
    const auto& cb = b.coeffs();
    for (size_t i = ca.size(); i-- > 0;) {
        int c = canonical_cmp(ca[i], cb[i]);
        if (c) return c;
    }
    return 0;
}

bool canonical_less(const FieldElement& a, const FieldElement& b) { return canonical_cmp(a, b) < 0; }

// --- UniPolynomial -----------------------------------------------------------

UniPolynomial::UniPolynomial(const FieldContext* ctx, std::vector<FieldElement> coeffs)
    : ctx_(ctx), c_(std::move(coeffs)) {
    normalize();
}

void UniPolynomial::normalize() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UniPolynomial UniPolynomial::from_ints(const FieldContext* ctx, const std::vector<int64_t>& coeffs) {
    std::vector<FieldElement> cs;
    cs.reserve(coeffs.size());
    for (int64_t v : coeffs) cs.push_back(ctx->from_int(v));
    return UniPolynomial(ctx, std::move(cs));
}

UniPolynomial UniPolynomial::x(const FieldContext* ctx) {
    return UniPolynomial(ctx, {ctx->zero(), ctx->one()});
}

UniPolynomial UniPolynomial::constant(FieldElement c) {
    const FieldContext* ctx = c.ctx();
    return UniPolynomial(ctx, {std::move(c)});
}

bool UniPolynomial::is_one() const { return degree() == 0 && c_[0].is_one(); }

FieldElement UniPolynomial::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return ctx_->zero();
    return c_[i];
}

FieldElement UniPolynomial::lead() const {
    if (is_zero()) throw ZeroPolynomial("leading coefficient of zero polynomial");
    return c_.back();
}

bool UniPolynomial::is_monic() const { return !is_zero() && c_.back().is_one(); }

UniPolynomial UniPolynomial::operator+(const UniPolynomial& o) const {
    std::vector<FieldElement> cs(std::max(c_.size(), o.c_.size()), ctx_->zero());
    for (size_t i = 0; i < cs.size(); ++i) cs[i] = coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i));
    return UniPolynomial(ctx_, std::move(cs));
}

UniPolynomial UniPolynomial::operator-(const UniPolynomial& o) const {
    std::vector<FieldElement> cs(std::max(c_.size(), o.c_.size()), ctx_->zero());
    for (size_t i = 0; i < cs.size(); ++i) cs[i] = coeff(static_cast<int>(i)) - o.coeff(static_cast<int>(i));
    return UniPolynomial(ctx_, std::move(cs));
}

UniPolynomial UniPolynomial::operator*(const UniPolynomial& o) const {
    if (is_zero() || o.is_zero()) return UniPolynomial(ctx_);
    std::vector<FieldElement> cs(c_.size() + o.c_.size() - 1, ctx_->zero());
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j].is_zero()) continue;
            cs[i + j] = cs[i + j] + c_[i] * o.c_[j];
        }
    }
    return UniPolynomial(ctx_, std::move(cs));
}

UniPolynomial UniPolynomial::operator*(const FieldElement& s) const {
    std::vector<FieldElement> cs = c_;
    for (auto& c : cs) c = c * s;
    return UniPolynomial(ctx_, std::move(cs));
}

bool UniPolynomial::operator==(const UniPolynomial& o) const { return c_ == o.c_; }

UniPolynomial UniPolynomial::monic() const {
    if (is_zero()) return *this;
    if (is_monic()) return *this;
    return *this * lead().inv();
}

UniPolynomial UniPolynomial::derivative() const {
    if (degree() <= 0) return UniPolynomial(ctx_);
    std::vector<FieldElement> cs(c_.size() - 1, ctx_->zero());
    for (size_t i = 1; i < c_.size(); ++i) cs[i - 1] = c_[i] * ctx_->from_int(static_cast<int64_t>(i));
    return UniPolynomial(ctx_, std::move(cs));
}

FieldElement UniPolynomial::eval(const FieldElement& x) const {
    FieldElement r = x.ctx()->zero();
    for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i].lift_to(x.ctx());
    return r;
}

UniPolynomial UniPolynomial::lift_to(const FieldContext* target) const {
    std::vector<FieldElement> cs;
    cs.reserve(c_.size());
    for (const auto& c : c_) cs.push_back(c.lift_to(target));
    return UniPolynomial(target, std::move(cs));
}

std::string UniPolynomial::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        if (coeff(i).is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << coeff(i).to_string();
        if (i >= 1) os << "*" << var;
        if (i >= 2) os << "^" << i;
    }
    return os.str();
}

std::pair<UniPolynomial, UniPolynomial> divrem(const UniPolynomial& a, const UniPolynomial& b) {
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    const FieldContext* ctx = a.ctx();
    if (a.degree() < b.degree()) return {UniPolynomial(ctx), a};
    FieldElement linv = b.lead().inv();
    std::vector<FieldElement> rem = a.coeffs();
    std::vector<FieldElement> quo(a.degree() - b.degree() + 1, ctx->zero());
    for (int k = a.degree(); k >= b.degree(); --k) {
        FieldElement c = rem[k];
        if (c.is_zero()) continue;
        FieldElement q = c * linv;
        quo[k - b.degree()] = q;
        for (int j = 0; j <= b.degree(); ++j)
            rem[k - b.degree() + j] = rem[k - b.degree() + j] - q * b.coeff(j);
    }
    return {UniPolynomial(ctx, std::move(quo)), UniPolynomial(ctx, std::move(rem))};
}

UniPolynomial operator%(const UniPolynomial& a, const UniPolynomial& b) { return divrem(a, b).second; }
UniPolynomial operator/(const UniPolynomial& a, const UniPolynomial& b) { return divrem(a, b).first; }

UniPolynomial upoly_gcd(const UniPolynomial& a, const UniPolynomial& b) {
    if (a.is_zero() && b.is_zero()) throw ZeroPolynomial("gcd(0, 0)");
    UniPolynomial r0 = a, r1 = b;
    while (!r1.is_zero()) {
        UniPolynomial r2 = r0 % r1;
        r0 = r1;
        r1 = r2;
    }
    return r0.monic();
}

UniPolynomial pow_mod(const UniPolynomial& a, uint64_t e, const UniPolynomial& mod) {
    UniPolynomial r = UniPolynomial::constant(a.ctx()->one());
    UniPolynomial b = a % mod;
    while (e) {
        if (e & 1) r = (r * b) % mod;
        b = (b * b) % mod;
        e >>= 1;
    }
    return r;
}

UniPolynomial frobenius_pow_mod(const UniPolynomial& a, uint64_t k, const UniPolynomial& mod) {
    UniPolynomial r = a % mod;
    const uint64_t p = a.ctx()->characteristic();
    for (uint64_t i = 0; i < k; ++i) r = pow_mod(r, p, mod);
    return r;
}

// --- FieldContext ------------------------------------------------------------

ContextPtr FieldContext::prime_field(uint64_t p) {
    if (p == 2) throw EvenCharacteristic("characteristic 2 is unsupported");
    if (!is_prime_u64(p)) throw CompositeCharacteristic("characteristic must be prime");
    auto ctx = std::shared_ptr<FieldContext>(new FieldContext());
    ctx->p_ = p;
    ctx->size_ = p;
    return ctx;
}

ContextPtr FieldContext::extension(ContextPtr base, const UniPolynomial& modulus) {
    if (!base) throw Error("null base context");
    if (modulus.degree() < 1) throw ReducibleModulus("modulus must have degree >= 1");
    if (!modulus.is_monic()) throw ReducibleModulus("modulus must be monic");
    if (modulus.ctx() != base.get() && !modulus.ctx()->equals(*base))
        throw ContextMismatch("modulus not defined over the base context");
    if (!is_irreducible(modulus)) throw ReducibleModulus("modulus is reducible");
    auto ctx = std::shared_ptr<FieldContext>(new FieldContext());
    ctx->p_ = base->characteristic();
    ctx->base_ = std::move(base);
    ctx->modulus_ = modulus;
    ctx->degree_ = modulus.degree();
    ctx->abs_degree_ = ctx->base_->absolute_degree() * ctx->degree_;
    if (auto bs = ctx->base_->size_u64()) {
        __uint128_t s = 1;
        bool fits = true;
        for (int i = 0; i < ctx->degree_; ++i) {
            s *= *bs;
            if (s > UINT64_MAX) {
                fits = false;
                break;
            }
        }
        if (fits) ctx->size_ = static_cast<uint64_t>(s);
    }
    return ctx;
}

uint64_t FieldContext::order_mod(uint64_t m) const {
    // (p^abs_degree - 1) mod m
    if (m == 1) return 0;
    uint64_t q = powmod(p_ % m, static_cast<uint64_t>(abs_degree_), m);
    return (q + m - 1) % m;
}

bool FieldContext::equals(const FieldContext& o) const {
    if (this == &o) return true;
    if (p_ != o.p_ || degree_ != o.degree_) return false;
    if (is_prime_field() != o.is_prime_field()) return false;
    if (is_prime_field()) return true;
    if (modulus_.coeffs().size() != o.modulus_.coeffs().size()) return false;
    if (!base_->equals(*o.base_)) return false;
    return modulus_ == o.modulus_.lift_to(base_.get());
}

FieldElement FieldContext::zero() const {
    FieldElement e;
    e.ctx_ = this;
    if (!is_prime_field()) e.c_.assign(degree_, base_->zero());
    return e;
}

FieldElement FieldContext::one() const { return from_int(1); }

FieldElement FieldContext::from_int(int64_t v) const {
    if (is_prime_field()) {
        FieldElement e;
        e.ctx_ = this;
        int64_t r = v % static_cast<int64_t>(p_);
        if (r < 0) r += static_cast<int64_t>(p_);
        e.res_ = static_cast<uint64_t>(r);
        return e;
    }
    FieldElement e = zero();
    e.c_[0] = base_->from_int(v);
    return e;
}

FieldElement FieldContext::from_coeffs(std::vector<FieldElement> coeffs) const {
    if (is_prime_field()) throw Error("from_coeffs on a prime field");
    if (static_cast<int>(coeffs.size()) != degree_) throw Error("wrong coefficient count");
    FieldElement e;
    e.ctx_ = this;
    e.c_ = std::move(coeffs);
    return e;
}

FieldElement FieldContext::generator() const {
    if (is_prime_field()) throw Error("prime field has no extension generator");
    FieldElement e = zero();
    e.c_[1] = base_->one();
    return e;
}

FieldElement FieldContext::random_element(std::mt19937_64& rng) const {
    if (is_prime_field()) {
        FieldElement e;
        e.ctx_ = this;
        e.res_ = rng() % p_;
        return e;
    }
    std::vector<FieldElement> cs;
    cs.reserve(degree_);
    for (int i = 0; i < degree_; ++i) cs.push_back(base_->random_element(rng));
    return from_coeffs(std::move(cs));
}

bool FieldContext::next_element(FieldElement& e) const {
    if (is_prime_field()) {
        if (e.res_ + 1 < p_) {
            ++e.res_;
            return true;
        }
        e.res_ = 0;
        return false;
    }
    for (auto& c : e.c_) {
        if (base_->next_element(c)) return true;
        // wrapped: carry into the next coefficient
    }
    return false;
}

bool FieldContext::has_ancestor(const FieldContext* anc) const {
    const FieldContext* cur = this;
    while (cur) {
        if (cur == anc || cur->equals(*anc)) return true;
        cur = cur->base();
    }
    return false;
}

std::string FieldContext::describe() const {
    if (is_prime_field()) return "F_" + std::to_string(p_);
    return base_->describe() + "[X]/(" + modulus_.to_string() + ")";
}

ContextPtr make_context(uint64_t p, const std::optional<UniPolynomial>& modulus) {
    ContextPtr base = FieldContext::prime_field(p);
    if (!modulus) return base;
    return FieldContext::extension(base, *modulus);
}

}  // namespace thetacorr
