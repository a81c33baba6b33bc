#include <algorithm>
#include <future>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "thetacorr/solver.hpp"

namespace thetacorr {

namespace {

std::vector<Polynomial> with_mask(const std::vector<Polynomial>& polys, std::vector<uint8_t> mask) {
    if (polys.empty()) return {};
    VarsPtr nv = make_vars(polys[0].vars()->names, std::move(mask));
    std::vector<Polynomial> out;
    out.reserve(polys.size());
    for (const auto& p : polys) {
        std::vector<Polynomial::Term> ts = p.terms();
        out.push_back(Polynomial::from_terms(p.ctx(), nv, p.order(), std::move(ts)));
    }
    return out;
}

const FieldContext* deeper_ctx(const FieldContext* a, const FieldContext* b) {
    if (a->has_ancestor(b)) return a;
    if (b->has_ancestor(a)) return b;
    throw ContextMismatch("contexts are not in one tower");
}

Polynomial subst_var(const Polynomial& p, int var, const FieldElement& val) {
    const FieldContext* ctx = deeper_ctx(p.ctx(), val.ctx());
    std::vector<Polynomial::Term> ts;
    ts.reserve(p.terms().size());
    for (const auto& [m, c] : p.terms()) {
        Monomial nm = m;
        FieldElement nc = c.lift_to(ctx);
        if (m.e[var]) {
            nc = nc * val.pow(m.e[var]);
            nm.e[var] = 0;
        }
        if (!nc.is_zero()) ts.emplace_back(std::move(nm), std::move(nc));
    }
    return Polynomial::from_terms(ctx, p.vars(), p.order(), std::move(ts));
}

UniPolynomial to_univariate(const Polynomial& p, int var, const FieldContext* ctx) {
    int deg = 0;
    for (const auto& [m, c] : p.terms()) deg = std::max<int>(deg, m.e[var]);
    std::vector<FieldElement> cs(deg + 1, ctx->zero());
    for (const auto& [m, c] : p.terms()) cs[m.e[var]] = cs[m.e[var]] + c.lift_to(ctx);
    return UniPolynomial(ctx, std::move(cs));
}

bool only_var(const Polynomial& p, int var, bool& has_var) {
    has_var = false;
    for (const auto& [m, c] : p.terms())
        for (int i = 0; i < m.arity(); ++i)
            if (m.e[i]) {
                if (i != var) return false;
                has_var = true;
            }
    return true;
}

struct EnumCfg {
    uint64_t seed = 1;
    int max_ext_degree = 64;
    int base_abs_degree = 1;
    bool note_multiplicities = false;
};

// Triangular enumeration of a zero-dimensional lex basis, last variable
// first, extending the field along irreducible factors.
void enum_rec(const std::vector<Polynomial>& polys, int next_var, std::vector<ContextPtr> chain,
              std::vector<FieldElement> values, std::string prov, const EnumCfg& cfg,
              std::vector<DiscoveredSolution>& out) {
    ContextPtr field = chain.back();
    for (const auto& p : polys)
        if (!p.is_zero() && p.is_constant()) return;  // inconsistent branch
    if (next_var < 0) {
        if (!polys.empty()) return;
        for (auto& v : values) v = v.lift_to(field.get());
        out.push_back({std::move(chain), std::move(values), std::move(prov)});
        return;
    }
    std::vector<UniPolynomial> univs;
    std::vector<Polynomial> rest;
    for (const auto& p : polys) {
        if (p.is_zero()) continue;
        bool has = false;
        if (only_var(p, next_var, has) && has)
            univs.push_back(to_univariate(p, next_var, field.get()));
        else
            rest.push_back(p);
    }
    if (univs.empty()) {
        // not in triangular position: fall back to a fresh lex basis
        GroebnerResult gr = buchberger(polys, MonomialOrder::lex());
        bool found = false;
        for (const auto& p : gr.basis) {
            bool has = false;
            if (only_var(p, next_var, has) && has) found = true;
        }
        if (!found) throw NotZeroDimensional("no univariate generator for variable " +
                                             polys[0].vars()->names[next_var]);
        enum_rec(gr.basis, next_var, std::move(chain), std::move(values), std::move(prov), cfg, out);
        return;
    }
    UniPolynomial g = univs[0];
    for (size_t i = 1; i < univs.size(); ++i) g = upoly_gcd(g, univs[i].lift_to(g.ctx()));
    UniPolynomial gs = squarefree_part(g);
    if (cfg.note_multiplicities && gs.degree() < g.degree())
        prov += "[sf " + std::to_string(g.degree()) + "->" + std::to_string(gs.degree()) + "]";
    if (gs.degree() == 0) return;
    auto factors = factor_univariate(gs, cfg.seed);
    int branch = 0;
    for (const auto& [f, mult] : factors) {
        (void)mult;
        ContextPtr nf = field;
        FieldElement root;
        if (f.degree() == 1) {
            root = -f.coeff(0);
        } else {
            int total = (field->absolute_degree() / cfg.base_abs_degree) * f.degree();
            if (total > cfg.max_ext_degree)
                throw ExtensionDegreeExceeded("needed extension degree " + std::to_string(total));
            nf = FieldContext::extension(field, f);
            root = nf->generator();
        }
        std::vector<Polynomial> sub;
        sub.reserve(rest.size());
        for (const auto& p : rest) {
            Polynomial q = subst_var(p, next_var, root);
            if (!q.is_zero()) sub.push_back(std::move(q));
        }
        auto chain2 = chain;
        if (nf != field) chain2.push_back(nf);
        auto values2 = values;
        values2[next_var] = root;
        std::string prov2 = prov + "/" + polys[0].vars()->names[next_var] + ":" + std::to_string(branch);
        if (f.degree() > 1) prov2 += "e" + std::to_string(f.degree());
        enum_rec(sub, next_var - 1, std::move(chain2), std::move(values2), std::move(prov2), cfg, out);
        ++branch;
    }
}

}  // namespace

Step1Result step1_eliminate(const std::vector<Polynomial>& system, const std::vector<uint8_t>& y_mask,
                            int max_batches) {
    Step1Result out;
    if (system.empty()) return out;
    std::vector<Polynomial> masked = with_mask(system, y_mask);
    GroebnerOptions opts;
    opts.selection = GroebnerOptions::PartialDegreeX;
    opts.early_stop_zero_dim_y = true;
    opts.max_batches = max_batches;
    GroebnerResult res = buchberger(masked, MonomialOrder::block_elim(y_mask), opts);
    if (res.y_polys.empty()) throw NotZeroDimensional("elimination produced no Y-block polynomials");
    RestrictResult rr = restrict_to_block(res.y_polys, /*keep_y=*/true);
    out.j1 = std::move(rr.polys);
    out.y_vars = rr.vars;
    out.stopped_early = res.stopped_early;
    out.batches = res.batches;
    return out;
}

std::vector<DiscoveredSolution> step234_decompose(const std::vector<Polynomial>& j1, ContextPtr field,
                                                  const SolveConfig& cfg) {
    if (j1.empty()) throw NotZeroDimensional("empty block ideal");
    GroebnerResult drl = buchberger(j1, MonomialOrder::grevlex());
    if (!is_zero_dimensional(drl.basis)) throw NotZeroDimensional("block ideal is not zero-dimensional");
    std::vector<Polynomial> glex = fglm(drl.basis, MonomialOrder::lex());
    EnumCfg ec;
    ec.seed = cfg.seed;
    ec.max_ext_degree = cfg.flags.max_ext_degree;
    ec.base_abs_degree = field->absolute_degree();
    ec.note_multiplicities = cfg.flags.char_ell_mode;
    std::vector<DiscoveredSolution> out;
    const int arity = j1[0].vars()->arity();
    enum_rec(glex, arity - 1, {field}, std::vector<FieldElement>(arity, field->zero()), "", ec, out);
    return out;
}

BlockPlan plan_blocks(const ThetaSystem& sys) {
    IndexGroup zl{sys.g, sys.ell}, zn{sys.g, sys.n};
    BlockPlan plan;
    std::set<int> reps;
    for (int y = 1; y < zl.size(); ++y) reps.insert(std::min(y, zl.neg(y)));
    std::set<int> claimed;
    for (int rep : reps) {
        plan.lambdas.push_back(rep);
        std::set<int> vars;
        for (int v = 0; v < zn.size(); ++v) {
            int var = sys.var_of_index[rho(zn, zl, v, rep)];
            if (var < 0) throw Error("plan_blocks: block touches a bound index");
            vars.insert(var);
        }
        for (int v : vars) {
            if (!claimed.insert(v).second) throw Error("plan_blocks: blocks overlap");
        }
        plan.blocks.emplace_back(vars.begin(), vars.end());
    }
    if (static_cast<int>(claimed.size()) != sys.vars->arity())
        throw Error("plan_blocks: blocks do not cover the free variables");
    return plan;
}

bool verify_solution(const ThetaSystem& sys, const std::vector<FieldElement>& var_values) {
    for (const auto& p : sys.polys)
        if (!eval_poly(p, var_values).is_zero()) return false;
    return true;
}

FieldElement ChainEmbedding::map(const FieldElement& e) const {
    for (size_t k = 0; k < chain.size(); ++k) {
        if (e.ctx() == chain[k].get() || e.ctx()->equals(*chain[k])) {
            if (k == 0) return e.lift_to(target.get());
            FieldElement acc = target->zero();
            FieldElement pw = target->one();
            for (const auto& c : e.coeffs()) {
                // coefficients live over chain[k-1]
                acc = acc + map(c) * pw;
                pw = pw * gen_images[k];
            }
            return acc;
        }
    }
    throw ContextMismatch("element context not on the embedding chain");
}

ChainEmbedding embed_chain(const std::vector<ContextPtr>& chain, ContextPtr target, uint64_t seed) {
    ChainEmbedding e;
    e.chain = chain;
    e.target = std::move(target);
    e.gen_images.resize(chain.size(), e.target->zero());
    for (size_t k = 1; k < chain.size(); ++k) {
        const UniPolynomial& m = chain[k]->modulus();
        std::vector<FieldElement> cs;
        cs.reserve(m.degree() + 1);
        for (int i = 0; i <= m.degree(); ++i) cs.push_back(e.map(m.coeff(i)));
        UniPolynomial mt(e.target.get(), std::move(cs));
        auto roots = roots_in_field(mt, seed);
        if (roots.empty()) throw Error("embed_chain: tower modulus has no root in the target field");
        e.gen_images[k] = roots[0];
    }
    return e;
}

namespace {

struct PipelineDiag {
    int top_batches = -1;
    int top_j1_degree = -1;
};

void pipeline_rec(const ThetaSystem& sys, const BlockPlan& plan, const SolveConfig& cfg,
                  const std::vector<Polynomial>& cur_polys, const VarsPtr& cur_vars,
                  std::vector<ContextPtr> chain, std::map<std::string, FieldElement> assigned, int depth,
                  PipelineDiag* diag, std::vector<DiscoveredSolution>& out) {
    ContextPtr field = chain.back();
    for (const auto& p : cur_polys)
        if (!p.is_zero() && p.is_constant()) return;  // inconsistent substitution
    if (cur_vars->arity() == 0) {
        if (!cur_polys.empty()) return;
        std::vector<FieldElement> values;
        values.reserve(sys.vars->arity());
        for (const auto& name : sys.vars->names) {
            auto it = assigned.find(name);
            if (it == assigned.end()) throw Error("pipeline: unassigned variable at emission");
            values.push_back(it->second.lift_to(field.get()));
        }
        out.push_back({std::move(chain), std::move(values), ""});
        return;
    }
    // next block: first scheduled block still containing free variables
    std::vector<uint8_t> mask(cur_vars->arity(), 0);
    bool found_block = false;
    for (const auto& block : plan.blocks) {
        bool intersects = false;
        for (int var : block) {
            int idx = cur_vars->index_of(sys.vars->names[var]);
            if (idx >= 0) {
                mask[idx] = 1;
                intersects = true;
            }
        }
        if (intersects) {
            found_block = true;
            break;
        }
        std::fill(mask.begin(), mask.end(), 0);
    }
    if (!found_block) throw Error("pipeline: no block covers the remaining variables");

    Step1Result s1 = step1_eliminate(cur_polys, mask, cfg.flags.max_batches);
    std::vector<DiscoveredSolution> partials = step234_decompose(s1.j1, field, cfg);
    if (depth == 0 && diag) {
        diag->top_batches = s1.batches;
        GroebnerResult drl = buchberger(s1.j1, MonomialOrder::grevlex());
        diag->top_j1_degree = static_cast<int>(quotient_basis(drl.basis).size());
    }

    auto run_branch = [&](const DiscoveredSolution& part, std::vector<DiscoveredSolution>& sink) {
        std::map<std::string, FieldElement> bind;
        for (int i = 0; i < s1.y_vars->arity(); ++i) bind[s1.y_vars->names[i]] = part.values[i];
        SpecializeResult sp = specialize(cur_polys, bind);
        std::map<std::string, FieldElement> assigned2 = assigned;
        for (auto& [k, v] : bind) assigned2[k] = v;
        std::vector<ContextPtr> chain2 = chain;
        for (size_t i = 1; i < part.chain.size(); ++i) chain2.push_back(part.chain[i]);
        if (sp.vars == nullptr) {
            // no polynomials survived specialization: rebuild an empty-var view
            std::vector<std::string> rem;
            for (const auto& nm : cur_vars->names)
                if (!bind.count(nm)) rem.push_back(nm);
            sp.vars = make_vars(rem);
        }
        pipeline_rec(sys, plan, cfg, sp.polys, sp.vars, std::move(chain2), std::move(assigned2), depth + 1,
                     nullptr, sink);
    };

    if (depth == 0 && cfg.flags.jobs > 1 && partials.size() > 1) {
        std::vector<std::future<std::vector<DiscoveredSolution>>> futs;
        for (const auto& part : partials) {
            futs.push_back(std::async(std::launch::async, [&, part]() {
                std::vector<DiscoveredSolution> sink;
                run_branch(part, sink);
                return sink;
            }));
        }
        for (auto& f : futs) {
            auto sink = f.get();
            out.insert(out.end(), sink.begin(), sink.end());
        }
    } else {
        for (const auto& part : partials) run_branch(part, out);
    }
}

std::string coords_key(const std::vector<FieldElement>& coords) {
    std::ostringstream os;
    for (const auto& c : coords) os << c.to_string() << '|';
    return os.str();
}

SolveResult assemble(ThetaSystem sys, ContextPtr base, const SolveConfig& cfg,
                     std::vector<DiscoveredSolution> found, PipelineDiag diag) {
    SolveResult res;
    res.base = base;
    res.step1_batches = diag.top_batches;
    res.j1_degree = diag.top_j1_degree;

    // unified field: lcm of the discovery tower degrees over the base
    long long D = 1;
    for (const auto& sol : found) {
        long long d = sol.chain.back()->absolute_degree() / base->absolute_degree();
        D = std::lcm(D, d);
    }
    if (D > cfg.flags.max_ext_degree)
        throw ExtensionDegreeExceeded("unified field degree " + std::to_string(D));
    ContextPtr unified =
        D == 1 ? base : FieldContext::extension(base, find_irreducible(base, static_cast<int>(D), cfg.seed));
    res.field = unified;
    for (const auto& sol : found)
        for (const auto& c : sol.chain) res.keep_alive.push_back(c);

    // embed each discovered solution, then close under the base Frobenius to
    // enumerate all geometric points
    const uint64_t base_abs = static_cast<uint64_t>(base->absolute_degree());
    std::set<std::string> seen;
    std::vector<std::pair<std::vector<FieldElement>, std::string>> assignments;
    for (const auto& sol : found) {
        ChainEmbedding emb = embed_chain(sol.chain, unified, cfg.seed);
        std::vector<FieldElement> vals;
        vals.reserve(sol.values.size());
        for (const auto& v : sol.values) vals.push_back(emb.map(v));
        for (long long k = 0; k < D; ++k) {
            std::vector<FieldElement> conj;
            conj.reserve(vals.size());
            for (const auto& v : vals) conj.push_back(v.frobenius_p(static_cast<uint64_t>(k) * base_abs));
            std::string key = coords_key(conj);
            if (!seen.insert(key).second) continue;
            if (!verify_solution(sys, conj)) continue;
            assignments.emplace_back(std::move(conj), sol.provenance);
        }
    }

    ThetaPoint b_lifted = sys.b.lift_to(unified.get());
    for (auto& [vals, prov] : assignments) {
        SolutionRecord rec;
        rec.point = ThetaPoint{sys.big, sys.full_coords(vals), ThetaPoint::Affine};
        for (auto& c : rec.point.coords) c = c.lift_to(unified.get());
        rec.cls = classify(rec.point, sys.n, sys.ell);
        rec.provenance = prov;
        auto [p1, omega] = pi1(rec.point, sys.ell, &b_lifted);
        (void)p1;
        rec.omega = omega;
        if (rec.cls.tag == Classification::Valid) rec.pi2_point = pi2(rec.point, sys.ell);
        res.records.push_back(std::move(rec));
    }
    std::sort(res.records.begin(), res.records.end(),
              [](const SolutionRecord& a, const SolutionRecord& b) {
                  return canonical_point_less(a.point, b.point);
              });

    // orbit classes
    res.used_zeta = unified->order_mod(static_cast<uint64_t>(sys.ell)) == 0;
    if (res.used_zeta) {
        FieldElement zeta = root_of_unity(unified, static_cast<uint64_t>(sys.ell));
        std::map<std::string, int> record_of_key;
        for (size_t i = 0; i < res.records.size(); ++i)
            record_of_key[coords_key(res.records[i].point.coords)] = static_cast<int>(i);
        int next_class = 0;
        for (size_t i = 0; i < res.records.size(); ++i) {
            if (res.records[i].class_id >= 0) continue;
            int cid = next_class++;
            for (const auto& member : orbit(res.records[i].point, sys.n, sys.ell, zeta)) {
                auto it = record_of_key.find(coords_key(member.coords));
                if (it != record_of_key.end() && res.records[it->second].class_id < 0)
                    res.records[it->second].class_id = cid;
            }
            if (res.records[i].class_id < 0) res.records[i].class_id = cid;
        }
    } else {
        // group by subgroup data: the twist action fixes every P_i
        std::map<std::string, int> class_of_key;
        for (auto& rec : res.records) {
            std::ostringstream os;
            os << rec.cls.tag << '#';
            std::vector<std::string> ps;
            int defined = 0;
            for (const auto& p : rec.cls.P) {
                if (p) {
                    ps.push_back(coords_key(*p));
                    ++defined;
                }
            }
            std::sort(ps.begin(), ps.end());
            ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
            os << defined << '#';
            for (const auto& s : ps) os << s << '$';
            auto [it, fresh] = class_of_key.emplace(os.str(), static_cast<int>(class_of_key.size()));
            (void)fresh;
            rec.class_id = it->second;
        }
    }

    std::set<int> valid_classes;
    for (const auto& rec : res.records) {
        switch (rec.cls.tag) {
            case Classification::Valid:
                ++res.num_valid;
                valid_classes.insert(rec.class_id);
                break;
            case Classification::DegenerateNotRankG:
                ++res.num_deg_not_rank;
                break;
            case Classification::DegenerateUndefined:
                ++res.num_deg_undefined;
                break;
        }
    }
    res.num_valid_classes = static_cast<int>(valid_classes.size());
    res.system = std::move(sys);
    return res;
}

}  // namespace

std::string SolutionRecord::tag_name() const {
    switch (cls.tag) {
        case Classification::Valid:
            return "valid";
        case Classification::DegenerateUndefined:
            return "deg_undefined";
        case Classification::DegenerateNotRankG:
            return "deg_not_rank";
    }
    return "?";
}

SolveResult solve_VJ(const ThetaPoint& b, int ell, ContextPtr base, const SolveConfig& cfg) {
    ThetaSystem sys = build_J(b, ell);
    if (sys.n == 2 && !cfg.flags.allow_nu1)
        throw MalformedInput("n = 2 (nu = 1) inputs require the allow_nu1 flag");
    BlockPlan plan = plan_blocks(sys);
    PipelineDiag diag;
    std::vector<DiscoveredSolution> found;
    pipeline_rec(sys, plan, cfg, sys.polys, sys.vars, {base}, {}, 0, &diag, found);
    return assemble(std::move(sys), base, cfg, std::move(found), diag);
}

SolveResult solve_VJ_naive(const ThetaPoint& b, int ell, ContextPtr base, const SolveConfig& cfg) {
    ThetaSystem sys = build_J(b, ell);
    if (sys.n == 2 && !cfg.flags.allow_nu1)
        throw MalformedInput("n = 2 (nu = 1) inputs require the allow_nu1 flag");
    GroebnerResult lexgb = buchberger(sys.polys, MonomialOrder::lex());
    if (!is_zero_dimensional(lexgb.basis)) throw NotZeroDimensional("V_J is not zero-dimensional");
    EnumCfg ec;
    ec.seed = cfg.seed;
    ec.max_ext_degree = cfg.flags.max_ext_degree;
    ec.base_abs_degree = base->absolute_degree();
    ec.note_multiplicities = cfg.flags.char_ell_mode;
    std::vector<DiscoveredSolution> found;
    enum_rec(lexgb.basis, sys.vars->arity() - 1, {base},
             std::vector<FieldElement>(sys.vars->arity(), base->zero()), "", ec, found);
    return assemble(std::move(sys), base, cfg, std::move(found), PipelineDiag{});
}

}  // namespace thetacorr
