#include "thetacorr/mpoly.hpp"

#include <algorithm>
#include <sstream>

namespace thetacorr {

int VariableSet::index_of(const std::string& name) const {
    for (int i = 0; i < arity(); ++i)
        if (names[i] == name) return i;
    return -1;
}

VarsPtr make_vars(std::vector<std::string> names, std::vector<uint8_t> y_mask) {
    auto vs = std::make_shared<VariableSet>();
    vs->names = std::move(names);
    vs->y_mask = std::move(y_mask);
    return vs;
}

bool Monomial::is_one() const {
    for (auto x : e)
        if (x) return false;
    return true;
}

int Monomial::degree() const {
    int d = 0;
    for (auto x : e) d += x;
    return d;
}

int Monomial::degree_masked(const std::vector<uint8_t>& mask, bool in_y) const {
    int d = 0;
    for (size_t i = 0; i < e.size(); ++i)
        if (static_cast<bool>(mask[i]) == in_y) d += e[i];
    return d;
}

bool Monomial::divides(const Monomial& o) const {
    for (size_t i = 0; i < e.size(); ++i)
        if (e[i] > o.e[i]) return false;
    return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r = *this;
    for (size_t i = 0; i < e.size(); ++i) r.e[i] = static_cast<uint16_t>(r.e[i] + o.e[i]);
    return r;
}

Monomial Monomial::operator/(const Monomial& o) const {
    Monomial r = *this;
    for (size_t i = 0; i < e.size(); ++i) r.e[i] = static_cast<uint16_t>(r.e[i] - o.e[i]);
    return r;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = std::max(a.e[i], b.e[i]);
    return r;
}

MonomialOrder MonomialOrder::block_elim(std::vector<uint8_t> y_mask) {
    MonomialOrder o(BlockElim);
    o.y_mask_ = std::move(y_mask);
    return o;
}

MonomialOrder MonomialOrder::lex_permuted(std::vector<int> significance) {
    MonomialOrder o(Lex);
    o.perm_ = std::move(significance);
    return o;
}

namespace {

// grevlex compare restricted to the variable positions listed in `vars`
// (given in significance order, most significant first).
int grevlex_cmp_on(const Monomial& a, const Monomial& b, const std::vector<int>& vars) {
    int da = 0, db = 0;
    for (int i : vars) {
        da += a.e[i];
        db += b.e[i];
    }
    if (da != db) return da < db ? -1 : 1;
    for (size_t k = vars.size(); k-- > 0;) {
        int i = vars[k];
        if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? -1 : 1;
    }
    return 0;
}

}  // namespace

int MonomialOrder::cmp(const Monomial& a, const Monomial& b) const {
    const int n = a.arity();
    switch (kind_) {
        case Lex: {
            if (perm_.empty()) {
                for (int i = 0; i < n; ++i)
                    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? -1 : 1;
                return 0;
            }
            for (int i : perm_)
                if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? -1 : 1;
            return 0;
        }
        case Grevlex: {
            int da = a.degree(), db = b.degree();
            if (da != db) return da < db ? -1 : 1;
            if (perm_.empty()) {
                for (int i = n; i-- > 0;)
                    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? -1 : 1;
                return 0;
            }
            for (size_t k = perm_.size(); k-- > 0;) {
                int i = perm_[k];
                if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? -1 : 1;
            }
            return 0;
        }
        case BlockElim: {
            std::vector<int> xs, ys;
            for (int i = 0; i < n; ++i) (y_mask_[i] ? ys : xs).push_back(i);
            if (int c = grevlex_cmp_on(a, b, xs)) return c;
            return grevlex_cmp_on(a, b, ys);
        }
    }
    return 0;
}

// --- Polynomial ----------------------------------------------------------------

Polynomial::Polynomial(const FieldContext* ctx, VarsPtr vars, MonomialOrder order)
    : ctx_(ctx), vars_(std::move(vars)), order_(std::move(order)) {}

Polynomial Polynomial::from_terms(const FieldContext* ctx, VarsPtr vars, MonomialOrder order,
                                  std::vector<Term> terms) {
    Polynomial p(ctx, std::move(vars), order);
    std::sort(terms.begin(), terms.end(),
              [&order](const Term& a, const Term& b) { return order.cmp(a.first, b.first) > 0; });
    p.terms_.reserve(terms.size());
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().first == t.first) {
            p.terms_.back().second = p.terms_.back().second + t.second;
            if (p.terms_.back().second.is_zero()) p.terms_.pop_back();
        } else if (!t.second.is_zero()) {
            p.terms_.push_back(std::move(t));
        }
    }
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one());
}

int Polynomial::total_degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, t.first.degree());
    return d;
}

const Monomial& Polynomial::leading_monomial() const {
    if (terms_.empty()) throw ZeroPolynomial("leading monomial of zero polynomial");
    return terms_[0].first;
}

const FieldElement& Polynomial::leading_coeff() const {
    if (terms_.empty()) throw ZeroPolynomial("leading coefficient of zero polynomial");
    return terms_[0].second;
}

Polynomial Polynomial::leading_term() const {
    Polynomial p(ctx_, vars_, order_);
    if (!terms_.empty()) p.terms_.push_back(terms_[0]);
    return p;
}

Polynomial Polynomial::tail() const {
    Polynomial p(ctx_, vars_, order_);
    p.terms_.assign(terms_.begin() + (terms_.empty() ? 0 : 1), terms_.end());
    return p;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    if (vars_->arity() != o.vars_->arity()) throw InconsistentArity();
    Polynomial r(ctx_, vars_, order_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        int c = order_.cmp(terms_[i].first, o.terms_[j].first);
        if (c > 0) {
            r.terms_.push_back(terms_[i++]);
        } else if (c < 0) {
            r.terms_.push_back(o.terms_[j++]);
        } else {
            FieldElement s = terms_[i].second + o.terms_[j].second;
            if (!s.is_zero()) r.terms_.emplace_back(terms_[i].first, std::move(s));
            ++i;
            ++j;
        }
    }
    while (i < terms_.size()) r.terms_.push_back(terms_[i++]);
    while (j < o.terms_.size()) r.terms_.push_back(o.terms_[j++]);
    return r;
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::scaled(const FieldElement& c) const {
    if (c.is_zero()) return Polynomial(ctx_, vars_, order_);
    Polynomial r = *this;
    for (auto& t : r.terms_) t.second = t.second * c;
    return r;
}

Polynomial Polynomial::times_term(const Monomial& m, const FieldElement& c) const {
    if (c.is_zero()) return Polynomial(ctx_, vars_, order_);
    Polynomial r = *this;
    for (auto& t : r.terms_) {
        t.first = t.first * m;
        t.second = t.second * c;
    }
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    std::vector<Term> acc;
    acc.reserve(terms_.size() * o.terms_.size());
    for (const auto& a : terms_)
        for (const auto& b : o.terms_) acc.emplace_back(a.first * b.first, a.second * b.second);
    return from_terms(ctx_, vars_, order_, std::move(acc));
}

Polynomial Polynomial::monic() const {
    if (terms_.empty()) return *this;
    if (terms_[0].second.is_one()) return *this;
    return scaled(terms_[0].second.inv());
}

bool Polynomial::operator==(const Polynomial& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].first != o.terms_[i].first || terms_[i].second != o.terms_[i].second) return false;
    return true;
}

Polynomial Polynomial::resorted(const MonomialOrder& order) const {
    std::vector<Term> ts = terms_;
    return from_terms(ctx_, vars_, order, std::move(ts));
}

Polynomial Polynomial::lift_to(const FieldContext* target) const {
    Polynomial r(target, vars_, order_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.emplace_back(t.first, t.second.lift_to(target));
    return r;
}

std::string Polynomial::canonical_key() const {
    std::vector<const Term*> ts;
    ts.reserve(terms_.size());
    for (const auto& t : terms_) ts.push_back(&t);
    std::sort(ts.begin(), ts.end(), [](const Term* a, const Term* b) { return a->first.e < b->first.e; });
    std::ostringstream os;
    for (const Term* t : ts) {
        for (auto x : t->first.e) os << x << ',';
        os << ':' << t->second.to_string() << ';';
    }
    return os.str();
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.to_string();
        for (int i = 0; i < m.arity(); ++i) {
            if (!m.e[i]) continue;
            os << "*" << vars_->names[i];
            if (m.e[i] > 1) os << "^" << m.e[i];
        }
    }
    return os.str();
}

Polynomial make_variable(const FieldContext* ctx, const VarsPtr& vars, const MonomialOrder& order,
                         int var_index) {
    Monomial m = Monomial::one(vars->arity());
    m.e[var_index] = 1;
    return Polynomial::from_terms(ctx, vars, order, {{m, ctx->one()}});
}

Polynomial make_constant(const FieldContext* ctx, const VarsPtr& vars, const MonomialOrder& order,
                         const FieldElement& c) {
    return Polynomial::from_terms(ctx, vars, order, {{Monomial::one(vars->arity()), c}});
}

Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& G) {
    Polynomial p = f;
    std::vector<Polynomial::Term> rem;
    while (!p.is_zero()) {
        bool reduced = false;
        for (const auto& g : G) {
            if (g.is_zero()) continue;
            if (g.leading_monomial().divides(p.leading_monomial())) {
                Monomial q = p.leading_monomial() / g.leading_monomial();
                FieldElement c = p.leading_coeff() / g.leading_coeff();
                p = p - g.times_term(q, c);
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            rem.push_back(p.terms()[0]);
            p = p.tail();
        }
    }
    return Polynomial::from_terms(f.ctx(), f.vars(), f.order(), std::move(rem));
}

Polynomial spoly(const Polynomial& f, const Polynomial& g) {
    Monomial l = Monomial::lcm(f.leading_monomial(), g.leading_monomial());
    Polynomial a = f.times_term(l / f.leading_monomial(), f.leading_coeff().inv());
    Polynomial b = g.times_term(l / g.leading_monomial(), g.leading_coeff().inv());
    return a - b;
}

FieldElement eval_poly(const Polynomial& f, const std::vector<FieldElement>& values) {
    const FieldContext* ctx = values.empty() ? f.ctx() : values[0].ctx();
    FieldElement acc = ctx->zero();
    for (const auto& [m, c] : f.terms()) {
        FieldElement t = c.lift_to(ctx);
        for (int i = 0; i < m.arity(); ++i)
            if (m.e[i]) t = t * values[i].pow(m.e[i]);
        acc = acc + t;
    }
    return acc;
}

SpecializeResult specialize(const std::vector<Polynomial>& F,
                            const std::map<std::string, FieldElement>& bindings) {
    SpecializeResult out;
    if (F.empty()) return out;
    const VarsPtr& vars = F[0].vars();
    const FieldContext* ctx = F[0].ctx();
    for (const auto& [name, val] : bindings) {
        if (val.ctx()->has_ancestor(ctx)) ctx = val.ctx();
    }
    std::vector<const FieldElement*> bound(vars->arity(), nullptr);
    for (const auto& [name, val] : bindings) {
        int i = vars->index_of(name);
        if (i < 0) throw Error("specialize: unknown variable " + name);
        bound[i] = &val;
    }
    std::vector<std::string> kept;
    out.old_to_new.assign(vars->arity(), -1);
    std::vector<uint8_t> kept_mask;
    for (int i = 0; i < vars->arity(); ++i) {
        if (!bound[i]) {
            out.old_to_new[i] = static_cast<int>(kept.size());
            kept.push_back(vars->names[i]);
            if (vars->has_blocks()) kept_mask.push_back(vars->y_mask[i]);
        }
    }
    out.vars = make_vars(std::move(kept), std::move(kept_mask));
    for (const auto& f : F) {
        std::vector<Polynomial::Term> ts;
        for (const auto& [m, c] : f.terms()) {
            FieldElement coeff = c;
            Monomial nm = Monomial::one(out.vars->arity());
            for (int i = 0; i < m.arity(); ++i) {
                if (!m.e[i]) continue;
                if (bound[i]) {
                    coeff = coeff * bound[i]->pow(m.e[i]);
                } else {
                    nm.e[out.old_to_new[i]] = m.e[i];
                }
            }
            if (!coeff.is_zero()) ts.emplace_back(std::move(nm), coeff.lift_to(ctx));
        }
        Polynomial g = Polynomial::from_terms(ctx, out.vars, f.order(), std::move(ts));
        if (!g.is_zero()) out.polys.push_back(std::move(g));
    }
    return out;
}

RestrictResult restrict_to_block(const std::vector<Polynomial>& F, bool keep_y) {
    RestrictResult out;
    if (F.empty()) return out;
    const VarsPtr& vars = F[0].vars();
    std::vector<std::string> kept;
    out.old_to_new.assign(vars->arity(), -1);
    for (int i = 0; i < vars->arity(); ++i) {
        if (static_cast<bool>(vars->y_mask[i]) == keep_y) {
            out.old_to_new[i] = static_cast<int>(kept.size());
            kept.push_back(vars->names[i]);
        }
    }
    out.vars = make_vars(std::move(kept));
    for (const auto& f : F) {
        std::vector<Polynomial::Term> ts;
        for (const auto& [m, c] : f.terms()) {
            Monomial nm = Monomial::one(out.vars->arity());
            for (int i = 0; i < m.arity(); ++i) {
                if (!m.e[i]) continue;
                if (out.old_to_new[i] < 0) throw Error("restrict_to_block: polynomial leaves the block");
                nm.e[out.old_to_new[i]] = m.e[i];
            }
            ts.emplace_back(std::move(nm), c);
        }
        out.polys.push_back(Polynomial::from_terms(f.ctx(), out.vars, MonomialOrder::grevlex(), std::move(ts)));
    }
    return out;
}

namespace {

FieldElement parse_coeff(const FieldContext* ctx, const std::string& tok);

FieldElement parse_coeff_at(const FieldContext* ctx, const std::string& s, size_t& pos) {
    if (s[pos] == '[') {
        if (ctx->is_prime_field()) throw MalformedInput("bracket coefficient over a prime field");
        ++pos;
        std::vector<FieldElement> cs;
        while (true) {
            cs.push_back(parse_coeff_at(ctx->base(), s, pos));
            if (pos >= s.size()) throw MalformedInput("unterminated coefficient list");
            if (s[pos] == ',') {
                ++pos;
                continue;
            }
            if (s[pos] == ']') {
                ++pos;
                break;
            }
            throw MalformedInput("bad coefficient list");
        }
        if (static_cast<int>(cs.size()) != ctx->degree()) throw MalformedInput("coefficient list arity");
        return ctx->from_coeffs(std::move(cs));
    }
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) throw MalformedInput("expected coefficient");
    return ctx->from_int(std::stoll(s.substr(start, pos - start)));
}

FieldElement parse_coeff(const FieldContext* ctx, const std::string& tok) {
    size_t pos = 0;
    FieldElement e = parse_coeff_at(ctx, tok, pos);
    if (pos != tok.size()) throw MalformedInput("trailing characters in coefficient");
    return e;
}

}  // namespace

Polynomial parse_polynomial(const FieldContext* ctx, const VarsPtr& vars, const MonomialOrder& order,
                            const std::string& text) {
    std::string s;
    for (char c : text)
        if (!isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty() || s == "0") return Polynomial(ctx, vars, order);
    std::vector<Polynomial::Term> ts;
    size_t pos = 0;
    int sign = 1;
    while (pos < s.size()) {
        if (s[pos] == '+') {
            sign = 1;
            ++pos;
            continue;
        }
        if (s[pos] == '-') {
            sign = -1;
            ++pos;
            continue;
        }
        // one term: factors separated by '*'
        FieldElement coeff = ctx->one();
        bool saw_coeff = false;
        Monomial m = Monomial::one(vars->arity());
        while (true) {
            if (pos < s.size() && (s[pos] == '[' || isdigit(static_cast<unsigned char>(s[pos])))) {
                size_t p2 = pos;
                FieldElement c = parse_coeff_at(ctx, s, p2);
                coeff = coeff * c;
                saw_coeff = true;
                pos = p2;
            } else {
                // variable name: longest match
                int best = -1;
                size_t best_len = 0;
                for (int i = 0; i < vars->arity(); ++i) {
                    const std::string& nm = vars->names[i];
                    if (s.compare(pos, nm.size(), nm) == 0 && nm.size() > best_len) {
                        best = i;
                        best_len = nm.size();
                    }
                }
                if (best < 0) throw MalformedInput("unknown variable at: " + s.substr(pos));
                pos += best_len;
                int exp = 1;
                if (pos < s.size() && s[pos] == '^') {
                    ++pos;
                    size_t st = pos;
                    while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
                    if (st == pos) throw MalformedInput("missing exponent");
                    exp = std::stoi(s.substr(st, pos - st));
                }
                m.e[best] = static_cast<uint16_t>(m.e[best] + exp);
            }
            if (pos < s.size() && s[pos] == '*') {
                ++pos;
                continue;
            }
            break;
        }
        (void)saw_coeff;
        if (sign < 0) coeff = -coeff;
        ts.emplace_back(std::move(m), std::move(coeff));
        sign = 1;
    }
    return Polynomial::from_terms(ctx, vars, order, std::move(ts));
}

}  // namespace thetacorr
