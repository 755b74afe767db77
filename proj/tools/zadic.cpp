#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "zadic/counterexample.hpp"
#include "zadic/descriptor.hpp"
#include "zadic/parse.hpp"
#include "zadic/presheaf.hpp"
#include "zadic/report.hpp"

using namespace zadic;
using report::json;
using report::Report;

namespace {

constexpr int exit_usage = 2;

std::vector<std::string> split_top_level(const std::string& s)
{
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(')
            ++depth;
        else if (c == ')')
            --depth;
        if (c == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (cur.find_first_not_of(" \t") != std::string::npos)
        out.push_back(cur);
    return out;
}

json pvalue_json(const arith::PValue& v)
{
    return v.is_zero() ? json(nullptr) : json(v.exponent());
}

// ---- zar -------------------------------------------------------------------

struct ZarOptions {
    std::string ring;
    std::vector<std::string> elements;
};

Report run_zar(const ZarOptions& o)
{
    Report rep;
    rep.subcommand = "zar";
    rep.config = {{"ring", o.ring}, {"elements", o.elements}};
    auto pres = descriptor::read_affinoid_file(o.ring).ring;
    auto zar = zariski::zariskisation(pres);
    rep.result["presentation"] = descriptor::to_json(zar.presentation);

    auto z = zariski::is_zariskian(pres);
    if (z.decided()) {
        const auto& d = z.value();
        rep.result["input_zariskian"] = {{"value", d.zariskian},
                                         {"witness", d.witness ? json(d.witness->to_string()) : json(nullptr)},
                                         {"justification", d.justification}};
    } else {
        rep.result["input_zariskian"] = {{"value", nullptr}, {"witness", nullptr}, {"justification", z.reason()}};
    }
    auto zz = zariski::is_zariskian(zar.presentation);
    if (zz.decided())
        rep.check("zariskisation is Zariskian", zz.value().zariskian, zz.value().justification);
    else
        rep.undecidable("zariskisation is Zariskian", zz.reason());

    rep.result["elements"] = json::array();
    for (const auto& text : o.elements) {
        json e;
        e["element"] = text;
        auto y = arith::parse_ratfunc(text);
        auto rx = zariski::represent(zar.ring, y);
        e["member"] = rx.has_value();
        if (!rx) {
            e["representation"] = nullptr;
            rep.result["elements"].push_back(e);
            continue;
        }
        e["representation"] = report::element_json(*rx);
        auto u = zariski::is_unit_zar(*rx);
        e["unit"] = u.unit;
        e["inverse"] = u.inverse ? report::element_json(*u.inverse) : json(nullptr);
        e["evidence"] = u.evidence ? json(u.evidence->to_string()) : json(nullptr);
        e["reason"] = u.reason;
        if (u.unit) {
            bool ok = u.inverse && (*rx * *u.inverse).value() == arith::RatFunc(arith::Poly(1));
            rep.check("inverse of " + text, ok, "x * x^-1 = 1 in Q(t)");
        }
        auto nil = zariski::is_top_nilpotent_zar(*rx);
        if (nil.decided()) {
            e["nilpotent"] = nil.value();
        } else {
            e["nilpotent"] = nullptr;
            rep.undecidable("nilpotence of " + text, nil.reason());
        }
        rep.result["elements"].push_back(e);
    }
    return rep;
}

// ---- spa -------------------------------------------------------------------

struct SpaOptions {
    std::string ring;
    std::string subset;
    std::string valuations;
    std::size_t sample = 0;
    std::uint64_t seed = 1;
    std::vector<std::string> maximal;
};

std::vector<rational::DiscreteValuation> read_valuations(const std::string& path, long p)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidInput("cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidInput(path + ": " + e.what());
    }
    if (j.is_object()) {
        if (j.contains("prime") && j["prime"].is_number_integer() && j["prime"].get<long>() != p)
            throw InvalidInput(path + ": prime " + j["prime"].dump() + " differs from the ring's prime");
        j = j.value("valuations", json::array());
    }
    if (!j.is_array())
        throw InvalidInput(path + ": expected an array of valuation strings");
    std::vector<rational::DiscreteValuation> out;
    for (const auto& v : j) {
        if (!v.is_string())
            throw InvalidInput(path + ": valuations are strings such as \"gauss\" or \"eval(1/2)\"");
        out.push_back(rational::parse_valuation(v.get<std::string>(), p));
    }
    return out;
}

Report run_spa(const SpaOptions& o)
{
    Report rep;
    rep.subcommand = "spa";
    rep.config = {{"ring", o.ring},       {"subset", o.subset}, {"valuations", o.valuations},
                  {"sample", o.sample},   {"seed", o.seed},     {"maximal", o.maximal}};
    auto a = descriptor::read_affinoid_file(o.ring);
    if (!a.ring.prime)
        throw InvalidInput("spa needs a ring with a prime");
    long p = *a.ring.prime;

    if (!o.subset.empty()) {
        auto u = rational::parse_rational_subset(a, o.subset);
        json js;
        js["text"] = u.to_string();
        js["nums"] = json::array();
        for (const auto& f : u.nums)
            js["nums"].push_back(f.to_string());
        js["den"] = u.den.to_string();
        js["scaled_nums"] = json::array();
        for (const auto& f : u.scaled_nums)
            js["scaled_nums"].push_back(f.to_string());
        js["scaled_den"] = u.scaled_den.to_string();
        json cert = {{"exponent", u.openness.exponent}, {"coefficients", json::array()}};
        for (const auto& c : u.openness.coefficients)
            cert["coefficients"].push_back(c.to_string());
        js["openness"] = cert;
        rep.result["subset"] = js;

        // Re-check the openness certificate: sum c_i * gen_i = p^e.
        arith::MPoly sum;
        for (size_t i = 0; i < u.openness.coefficients.size(); ++i) {
            const auto& g = i < u.nums.size() ? u.nums[i] : u.den;
            sum += u.openness.coefficients[i] * arith::MPoly::from_poly(g);
        }
        rep.check("openness certificate", sum == arith::MPoly(arith::pow(arith::Rational(p), u.openness.exponent)),
                  u.openness.explanation);

        auto loc = rational::rational_localization(a, u);
        rep.result["localization"] = descriptor::to_json(loc.domain);

        std::vector<rational::DiscreteValuation> vals;
        if (!o.valuations.empty())
            vals = read_valuations(o.valuations, p);
        if (o.sample)
            for (const auto& v : rational::sample_valuations(p, o.sample, o.seed))
                vals.push_back(v);
        json matrix = json::array();
        for (const auto& v : vals) {
            json row;
            row["valuation"] = v.to_string();
            if (!v.is_spa_point()) {
                row["member"] = nullptr;
                row["den_order"] = rational::order_apply(v, arith::RatFunc(u.den)).value.value_or(-1);
                row["note"] = "additive valuation, not a point of Spa A";
                matrix.push_back(row);
                continue;
            }
            try {
                row["member"] = rational::in_rational_subset(v, u);
                row["den"] = pvalue_json(rational::val_apply(v, arith::RatFunc(u.den)));
                row["nums"] = json::array();
                for (const auto& f : u.nums)
                    row["nums"].push_back(pvalue_json(rational::val_apply(v, arith::RatFunc(f))));
            } catch (const InvalidInput& e) {
                row["member"] = nullptr;
                row["note"] = e.what();
            }
            matrix.push_back(row);
        }
        rep.result["membership"] = matrix;
    }

    rep.result["kernel_points"] = json::array();
    for (const auto& text : o.maximal) {
        auto m = arith::parse_mpoly(text);
        auto kp = rational::kernel_point_for_maximal(a, m);
        json j = {{"ideal", text}, {"point", kp.point ? json(kp.point->to_string()) : json(nullptr)},
                  {"reason", kp.reason}};
        if (!kp.point) {
            rep.undecidable("kernel point for (" + text + ")", "Unrepresentable: " + kp.reason);
        } else {
            // Both inclusions on a fixed sample: f in (m) exactly when v(f) = 0.
            auto mp = m.to_poly(arith::var_t);
            bool ok = true;
            std::size_t tested = 0;
            Rng rng(o.seed);
            for (int k = 0; k < 60 && mp; ++k) {
                std::vector<arith::Rational> c;
                int deg = static_cast<int>(rng.uniform(0, 6));
                for (int i = 0; i <= deg; ++i)
                    c.emplace_back(rng.uniform(-9, 9), rng.uniform(1, 9));
                for (auto& q : c)
                    q.canonicalize();
                arith::Poly f(std::move(c));
                if (k % 2 == 0 && f.degree() + mp->degree() <= 6)
                    f = f * *mp;
                if (f.is_zero())
                    continue;
                bool in_m = kp.point->kind == rational::ValKind::ResidueTrivial
                                ? arith::content_exp(f, p) >= 1
                                : arith::divides(*mp, f);
                if (kp.point->kind == rational::ValKind::ResidueTrivial && !arith::is_p_integral(f, p))
                    continue;
                if (kp.point->kind == rational::ValKind::ResidueTrivial && !f.is_constant())
                    continue;
                ok = ok && rational::val_apply(*kp.point, arith::RatFunc(f)).is_zero() == in_m;
                ++tested;
            }
            j["sample_size"] = tested;
            rep.check("kernel of " + kp.point->to_string() + " is (" + text + ")", ok,
                      std::to_string(tested) + " sampled elements");
        }
        rep.result["kernel_points"].push_back(j);
    }
    return rep;
}

// ---- cech ------------------------------------------------------------------

struct CechOptions {
    std::string ring;
    std::string cover;
    std::string module = "A";
    std::size_t trials = 200;
    std::uint64_t seed = 0;
    std::size_t witnesses = 3;
};

Report run_cech(const CechOptions& o)
{
    Report rep;
    rep.subcommand = "cech";
    rep.config = {{"ring", o.ring},     {"cover", o.cover}, {"module", o.module},
                  {"trials", o.trials}, {"seed", o.seed},   {"witnesses", o.witnesses}};
    auto a = descriptor::read_affinoid_file(o.ring);
    std::vector<arith::Poly> gens;
    for (const auto& s : split_top_level(o.cover))
        gens.push_back(arith::parse_poly(s));
    auto cover = presheaf::make_cover(a, gens);
    auto cx = presheaf::cech_complex(cover, presheaf::parse_module(o.module));

    json jc = {{"gens", json::array()}, {"bezout", json::array()}, {"z", cover.bezout_z.to_string()}};
    for (size_t i = 0; i < cover.gens.size(); ++i) {
        jc["gens"].push_back(cover.gens[i].to_string());
        jc["bezout"].push_back(cover.bezout[i].to_string());
    }
    rep.result["cover"] = jc;
    rep.result["global"] = descriptor::to_json(cx.global->domain);
    rep.result["module"] = cx.module.to_string();
    rep.result["pieces"] = json::array();
    for (const auto& s : cx.pieces)
        rep.result["pieces"].push_back({{"piece", s->piece.to_string()},
                                        {"domain", descriptor::to_json(s->domain)},
                                        {"zero", s->zero()}});
    for (const auto& s : cx.overlap_rings)
        rep.result["pieces"].push_back({{"piece", s->piece.to_string()},
                                        {"domain", descriptor::to_json(s->domain)},
                                        {"zero", s->zero()}});

    auto r = presheaf::cech_check(cx, o.trials, o.seed);
    rep.result["report"] = {{"trials", r.trials},
                            {"seed", r.seed},
                            {"phi_injective", r.phi_injective},
                            {"psi_after_phi_zero", r.psi_after_phi_zero},
                            {"glue_roundtrips", r.glue_roundtrips},
                            {"cocycle_roundtrips", r.cocycle_roundtrips},
                            {"failures", r.failures}};
    rep.check("phi injective", r.phi_injective);
    rep.check("psi o phi = 0", r.psi_after_phi_zero);
    rep.check("glue o phi = id", r.glue_roundtrips == r.trials,
              std::to_string(r.glue_roundtrips) + "/" + std::to_string(r.trials));
    rep.check("phi o glue = id on cocycles", r.cocycle_roundtrips == r.trials,
              std::to_string(r.cocycle_roundtrips) + "/" + std::to_string(r.trials));

    // A few glued cocycles spelled out for offline checking.
    json ws = json::array();
    for (std::size_t i = 0; i < o.witnesses; ++i) {
        Rng rng(Rng::derive(o.seed, o.trials + i));
        auto m = presheaf::random_global(cx, rng);
        auto c = presheaf::random_cocycle(cx, m, rng);
        auto g = presheaf::glue(cx, c);
        json w = {{"global", json::array()}, {"cocycle", json::array()}, {"glued", nullptr}};
        for (const auto& x : m.comps)
            w["global"].push_back(report::element_json(x));
        for (const auto& s : c) {
            json piece = json::array();
            for (const auto& x : s.comps)
                piece.push_back(report::element_json(x));
            w["cocycle"].push_back(piece);
        }
        if (g.decided()) {
            w["glued"] = json::array();
            for (const auto& x : g.value().comps)
                w["glued"].push_back(report::element_json(x));
        }
        ws.push_back(w);
    }
    rep.result["witnesses"] = ws;
    return rep;
}

// ---- cex -------------------------------------------------------------------

struct CexOptions {
    long p = 3;
    unsigned grid_degree = 2;
    long grid_height = 2;
    unsigned max_nonzero = 2;
    bool no_grid = false;
    std::size_t valuations = 100;
    std::uint64_t seed = 7;
};

json certificate_json(const cex::ObstructionCertificate& c)
{
    json zd = json::array();
    for (const auto& f : c.zero_divisors)
        zd.push_back(f.to_string());
    return {{"irreducible", {{"pass", c.irreducible}, {"discriminant", arith::to_string(c.discriminant)}}},
            {"quotient_domain", {{"pass", c.quotient_domain}, {"witness", c.quotient_witness.to_string()}}},
            {"fp_zero_divisor", {{"pass", c.fp_zero_divisor}, {"factors", zd}}},
            {"valuation_mismatch",
             {{"pass", c.valuation_mismatch},
              {"samples", c.mismatch_samples},
              {"lhs_exponent", 0},
              {"rhs_min_exponent", c.rhs_min_exponent},
              {"interval_argument", c.interval_argument}}},
            {"passed", c.passed()}};
}

Report run_cex(const CexOptions& o)
{
    Report rep;
    rep.subcommand = "cex";
    rep.config = {{"p", o.p},
                  {"grid_degree", o.grid_degree},
                  {"grid_height", o.grid_height},
                  {"max_nonzero", o.max_nonzero},
                  {"grid", !o.no_grid},
                  {"valuations", o.valuations},
                  {"seed", o.seed}};
    auto ctx = cex::cex_setup(o.p);
    auto sample = cex::cex_valuations(o.p, o.valuations, o.seed);
    std::optional<cex::GridSpec> grid;
    if (!o.no_grid)
        grid = cex::GridSpec{o.grid_degree, o.grid_height, o.max_nonzero};
    auto h = cex::h1_report(ctx, grid, sample, o.seed);

    json cc = {{"checked", h.cover.checked}, {"only_u1", h.cover.only_u1}, {"only_u2", h.cover.only_u2},
               {"both", h.cover.both},       {"kinds", h.cover.kinds},     {"violations", h.cover.violations}};
    rep.result["p"] = o.p;
    rep.result["cover_check"] = cc;
    rep.result["target"] = report::element_json(cex::target_element(ctx));
    rep.result["certificates"] = certificate_json(h.certificates);
    rep.result["grid"] = {{"candidates", h.candidates},
                          {"refuted", h.refuted},
                          {"surprises", h.surprises},
                          {"double_entry_failures", h.double_entry_failures}};

    json ex = json::array();
    std::string half = arith::to_string(arith::Rational(o.p, 2));
    std::vector<std::array<std::string, 4>> examples{
        {"0", "0", "1", "0"}, {"0", "0", "0", "0"}, {"0", "0", "-" + half + "*Y", half + "*Y"}};
    for (const auto& e : examples) {
        cex::CandidatePreimage c{arith::parse_mpoly(e[0]), arith::parse_mpoly(e[1]), arith::parse_mpoly(e[2]),
                                 arith::parse_mpoly(e[3])};
        auto r = cex::refute_candidate(ctx, c, o.seed);
        ex.push_back({{"f1", e[0]}, {"f2", e[1]}, {"g1", e[2]}, {"g2", e[3]},
                      {"difference", r.difference.to_string()}});
    }
    rep.result["examples"] = ex;
    rep.result["verdict"] = h.verdict;
    rep.result["scope"] = h.scope;

    rep.check("cover", h.cover.ok(), std::to_string(h.cover.checked) + " valuations");
    rep.check("certificate: irreducible", h.certificates.irreducible);
    rep.check("certificate: quotient domain", h.certificates.quotient_domain);
    rep.check("certificate: F_p zero divisor", h.certificates.fp_zero_divisor);
    rep.check("certificate: valuation mismatch", h.certificates.valuation_mismatch);
    rep.check("grid refuted", h.surprises.empty() && h.refuted == h.candidates,
              std::to_string(h.refuted) + "/" + std::to_string(h.candidates));
    rep.check("double entry", h.double_entry_failures.empty());
    return rep;
}

// ---- tensor / quotient -----------------------------------------------------

struct TensorOptions {
    std::string left;
    std::string right;
};

std::string read_text(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidInput("cannot open " + path);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

Report run_tensor(const TensorOptions& o)
{
    Report rep;
    rep.subcommand = "tensor";
    rep.config = {{"left", o.left}, {"right", o.right}};
    auto phi = descriptor::parse_ring_map(read_text(o.left));
    auto psi = descriptor::parse_ring_map(read_text(o.right));
    for (auto* m : {&phi, &psi})
        if (!m->continuity) {
            auto c = fadic::certify_continuity(*m);
            if (c.decided())
                m->continuity = c.value();
        }
    auto t = fadic::tensor_fadic(phi, psi);
    if (!t.decided()) {
        rep.undecidable("tensor product", t.reason());
        return rep;
    }
    const auto& v = t.value();
    rep.result["ring"] = descriptor::to_json(v.ring);
    rep.result["from_left"] = descriptor::to_json(v.from_left);
    rep.result["from_right"] = descriptor::to_json(v.from_right);
    rep.result["zero"] = v.zero;
    // The square commutes on the generators of R.
    bool commutes = true;
    for (const auto& [var, img] : phi.images) {
        auto l = v.from_left.apply(img);
        auto r = v.from_right.apply(psi.images.at(var));
        auto eq = fadic::carrier_equal(*v.ring.carrier, l, r);
        commutes = commutes && eq.decided() && eq.value();
    }
    rep.check("square commutes", commutes);
    for (const auto& [name, map] : {std::pair{"left", &v.from_left}, std::pair{"right", &v.from_right}}) {
        auto c = fadic::certify_continuity(*map);
        if (c.decided())
            rep.check(std::string("continuity of the ") + name + " map", true);
        else
            rep.undecidable(std::string("continuity of the ") + name + " map", c.reason());
    }
    return rep;
}

struct QuotientOptions {
    std::string ring;
    std::string ideal;
};

Report run_quotient(const QuotientOptions& o)
{
    Report rep;
    rep.subcommand = "quotient";
    rep.config = {{"ring", o.ring}, {"ideal", o.ideal}};
    auto a = descriptor::read_affinoid_file(o.ring).ring;
    std::vector<arith::MPoly> gens;
    for (const auto& s : split_top_level(o.ideal))
        gens.push_back(arith::parse_mpoly(s));
    auto q = fadic::quotient_fadic(a, gens);
    rep.result["ring"] = descriptor::to_json(q.ring);
    rep.result["projection"] = descriptor::to_json(q.projection);
    rep.result["simplified"] = q.simplified ? descriptor::to_json(*q.simplified) : json(nullptr);
    bool kills = true;
    for (const auto& g : gens) {
        auto eq = fadic::carrier_equal(*q.ring.carrier, q.projection.apply(g), arith::MPoly());
        kills = kills && eq.decided() && eq.value();
    }
    rep.check("projection kills the ideal", kills);
    auto open = fadic::is_open_ideal(a, gens);
    if (open.decided())
        rep.result["ideal_open"] = {{"open", open.value().open}, {"explanation", open.value().explanation}};
    else
        rep.result["ideal_open"] = {{"open", nullptr}, {"explanation", open.reason()}};
    auto hk = fadic::hausdorff_kernel_domain(q.ring);
    if (hk.decided()) {
        json g = json::array();
        for (const auto& x : hk.value().generators)
            g.push_back(x.to_string());
        rep.result["hausdorff_kernel"] = {{"generators", g}, {"justification", hk.value().justification}};
    } else {
        rep.result["hausdorff_kernel"] = nullptr;
        rep.undecidable("closure of zero", hk.reason());
    }
    return rep;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"zadic: Zariskian adic spaces with exact arithmetic"};
    app.set_version_flag("--version", report::tool_version);
    bool print_schema = false, timing = false;
    std::string output;
    app.add_flag("--schema", print_schema, "Print the report JSON schema and exit");
    app.add_flag("--timing", timing, "Add wall-clock timing to the report (breaks byte stability)");
    app.add_option("-o,--output", output, "Write the report here instead of stdout");

    ZarOptions zo;
    auto* zar = app.add_subcommand("zar", "Zariskisation, unit and nilpotence decisions");
    zar->add_option("--ring", zo.ring, "Ring descriptor (JSON)")->required();
    zar->add_option("--element", zo.elements, "Element in t (repeatable)");

    SpaOptions so;
    auto* spa = app.add_subcommand("spa", "Rational subsets, valuations and kernel points");
    spa->add_option("--ring", so.ring, "Affinoid or ring descriptor (JSON)")->required();
    spa->add_option("--subset", so.subset, "R(f1, ..., fr / g)");
    spa->add_option("--valuations", so.valuations, "JSON file with valuation strings");
    spa->add_option("--sample", so.sample, "Add this many seeded valuations");
    spa->add_option("--seed", so.seed, "Seed for --sample and kernel checks");
    spa->add_option("--maximal", so.maximal, "Generator of a maximal ideal (repeatable)");

    CechOptions co;
    auto* cech = app.add_subcommand("cech", "Cech sequence and gluing on a standard cover");
    cech->add_option("--ring", co.ring, "Affinoid or ring descriptor (JSON)")->required();
    cech->add_option("--cover", co.cover, "Comma separated cover elements")->required();
    cech->add_option("--module", co.module, "A, A^n, A+A, A/(g) or 0");
    cech->add_option("--trials", co.trials, "Number of random trials");
    cech->add_option("--seed", co.seed, "Seed")->required();
    cech->add_option("--witnesses", co.witnesses, "Glued cocycles written to the report");

    CexOptions xo;
    auto* cexc = app.add_subcommand("cex", "Replay of the counterexample to acyclicity");
    cexc->add_option("--p", xo.p, "Odd prime");
    cexc->add_option("--grid-degree", xo.grid_degree, "Total degree of candidate monomials");
    cexc->add_option("--grid-height", xo.grid_height, "Height of candidate coefficients");
    cexc->add_option("--max-nonzero", xo.max_nonzero, "Nonzero polynomials per candidate");
    cexc->add_flag("--no-grid", xo.no_grid, "Skip the candidate grid");
    cexc->add_option("--valuations", xo.valuations, "Number of sampled valuations");
    cexc->add_option("--seed", xo.seed, "Seed");

    TensorOptions to;
    auto* tensor = app.add_subcommand("tensor", "Completed tensor product of two maps");
    tensor->add_option("--left", to.left, "Ring map R -> A (JSON)")->required();
    tensor->add_option("--right", to.right, "Ring map R -> B (JSON)")->required();

    QuotientOptions qo;
    auto* quotient = app.add_subcommand("quotient", "Quotient by an ideal");
    quotient->add_option("--ring", qo.ring, "Ring descriptor (JSON)")->required();
    quotient->add_option("--ideal", qo.ideal, "Comma separated generators")->required();

    app.require_subcommand(0, 1);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    if (print_schema) {
        std::cout << descriptor::dump(report::schema());
        return 0;
    }
    if (app.get_subcommands().empty()) {
        std::cerr << app.help();
        return exit_usage;
    }

    auto start = std::chrono::steady_clock::now();
    Report rep;
    try {
        if (zar->parsed())
            rep = run_zar(zo);
        else if (spa->parsed())
            rep = run_spa(so);
        else if (cech->parsed())
            rep = run_cech(co);
        else if (cexc->parsed())
            rep = run_cex(xo);
        else if (tensor->parsed())
            rep = run_tensor(to);
        else
            rep = run_quotient(qo);
    } catch (const ParseError& e) {
        std::cerr << "zadic: parse error at line " << e.line() << ", column " << e.column() << ": " << e.detail()
                  << "\n";
        return exit_usage;
    } catch (const CertificateFailure& e) {
        std::cerr << "zadic: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "zadic: " << e.what() << "\n";
        return exit_usage;
    }
    if (timing)
        rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::string text = descriptor::dump(rep.to_json());
    if (output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(output);
        if (!out) {
            std::cerr << "zadic: cannot write " << output << "\n";
            return exit_usage;
        }
        out << text;
    }
    return rep.exit_code();
}
