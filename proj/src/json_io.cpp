#include "thetacorr/json_io.hpp"

namespace thetacorr {

json field_to_json(const FieldElement& e) {
    if (e.ctx()->is_prime_field()) return e.residue();
    json arr = json::array();
    for (const auto& c : e.coeffs()) arr.push_back(field_to_json(c));
    return arr;
}

FieldElement field_from_json(const ContextPtr& ctx, const json& j) {
    if (j.is_number_integer()) return ctx->from_int(j.get<int64_t>());
    if (!j.is_array()) throw MalformedInput("field element must be an integer or a coefficient list");
    if (ctx->is_prime_field()) throw MalformedInput("coefficient list given over a prime field");
    if (static_cast<int>(j.size()) > ctx->degree()) throw MalformedInput("coefficient list too long");
    std::vector<FieldElement> cs;
    ContextPtr base = ctx->base_ptr();
    for (const auto& c : j) cs.push_back(field_from_json(base, c));
    while (static_cast<int>(cs.size()) < ctx->degree()) cs.push_back(base->zero());
    return ctx->from_coeffs(std::move(cs));
}

UniPolynomial upoly_from_json(const ContextPtr& ctx, const json& j) {
    if (!j.is_array()) throw MalformedInput("polynomial must be a coefficient list, lowest first");
    std::vector<FieldElement> cs;
    for (const auto& c : j) cs.push_back(field_from_json(ctx, c));
    return UniPolynomial(ctx.get(), std::move(cs));
}

json upoly_to_json(const UniPolynomial& f) {
    json arr = json::array();
    for (int i = 0; i <= f.degree(); ++i) arr.push_back(field_to_json(f.coeff(i)));
    return arr;
}

json tower_to_json(const ContextPtr& field) {
    std::vector<const FieldContext*> chain;
    for (const FieldContext* c = field.get(); c; c = c->base()) chain.push_back(c);
    json out;
    out["p"] = chain.back()->characteristic();
    json exts = json::array();
    for (size_t i = chain.size() - 1; i-- > 0;) exts.push_back(upoly_to_json(chain[i]->modulus()));
    out["extensions"] = exts;
    out["degree"] = field->absolute_degree();
    return out;
}

ContextPtr tower_from_json(const json& j) {
    if (!j.contains("p")) throw MalformedInput("tower needs a characteristic p");
    ContextPtr ctx = FieldContext::prime_field(j.at("p").get<uint64_t>());
    if (j.contains("extensions")) {
        for (const auto& ext : j.at("extensions")) ctx = FieldContext::extension(ctx, upoly_from_json(ctx, ext));
    }
    return ctx;
}

json point_coords_to_json(const std::vector<FieldElement>& coords) {
    json arr = json::array();
    for (const auto& c : coords) arr.push_back(field_to_json(c));
    return arr;
}

std::vector<FieldElement> point_coords_from_json(const ContextPtr& ctx, const json& j) {
    if (!j.is_array()) throw MalformedInput("coordinates must be an array");
    std::vector<FieldElement> out;
    for (const auto& c : j) out.push_back(field_from_json(ctx, c));
    return out;
}

Instance parse_instance(const json& j) {
    Instance inst;
    if (!j.contains("p") || !j.contains("g") || !j.contains("n") || !j.contains("ell") || !j.contains("b"))
        throw MalformedInput("instance needs p, g, n, ell, b");
    ContextPtr base = FieldContext::prime_field(j.at("p").get<uint64_t>());
    if (j.contains("modulus") && !j.at("modulus").is_null())
        base = FieldContext::extension(base, upoly_from_json(base, j.at("modulus")));
    inst.base = base;
    inst.g = j.at("g").get<int>();
    inst.n = j.at("n").get<int>();
    inst.ell = j.at("ell").get<int>();
    if (inst.g < 1) throw MalformedInput("g must be >= 1");
    if (inst.n < 2 || inst.n % 2 != 0) throw MalformedInput("n must be even and >= 2");
    IndexGroup grp{inst.g, inst.n};
    auto coords = point_coords_from_json(base, j.at("b"));
    if (static_cast<int>(coords.size()) != grp.size())
        throw MalformedInput("b must have " + std::to_string(grp.size()) + " coordinates");
    inst.b = ThetaPoint{grp, std::move(coords), ThetaPoint::Projective};
    if (j.contains("seed")) inst.cfg.seed = j.at("seed").get<uint64_t>();
    if (j.contains("flags")) {
        const json& f = j.at("flags");
        if (f.contains("char_ell_mode")) inst.cfg.flags.char_ell_mode = f.at("char_ell_mode").get<bool>();
        if (f.contains("allow_nu1")) inst.cfg.flags.allow_nu1 = f.at("allow_nu1").get<bool>();
        if (f.contains("max_ext_degree")) inst.cfg.flags.max_ext_degree = f.at("max_ext_degree").get<int>();
        if (f.contains("jobs")) inst.cfg.flags.jobs = f.at("jobs").get<int>();
        if (f.contains("max_batches")) inst.cfg.flags.max_batches = f.at("max_batches").get<int>();
    }
    return inst;
}

json record_to_json(const SolutionRecord& rec) {
    json out;
    out["coords"] = point_coords_to_json(rec.point.coords);
    out["class"] = rec.class_id;
    out["tag"] = rec.tag_name();
    json P = json::object();
    for (size_t i = 0; i < rec.cls.P.size(); ++i) {
        if (rec.cls.P[i])
            P[std::to_string(i)] = point_coords_to_json(*rec.cls.P[i]);
        else
            P[std::to_string(i)] = nullptr;
    }
    out["P"] = P;
    if (rec.pi2_point) out["pi2"] = point_coords_to_json(rec.pi2_point->coords);
    if (!rec.provenance.empty()) out["provenance"] = rec.provenance;
    return out;
}

json solve_result_to_json(const SolveResult& res) {
    json out;
    out["tower"] = tower_to_json(res.field);
    json recs = json::array();
    for (const auto& r : res.records) recs.push_back(record_to_json(r));
    out["records"] = recs;
    out["summary"] = {
        {"total", res.records.size()},
        {"valid", res.num_valid},
        {"valid_classes", res.num_valid_classes},
        {"deg_not_rank", res.num_deg_not_rank},
        {"deg_undefined", res.num_deg_undefined},
        {"orbit_grouping", res.used_zeta ? "zeta" : "p_subgroup"},
    };
    return out;
}

}  // namespace thetacorr
