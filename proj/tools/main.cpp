#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cat2/cofibration.hpp"
#include "cat2/fixtures.hpp"
#include "cat2/homology.hpp"
#include "cat2/io.hpp"
#include "cat2/pushout.hpp"
#include "cat2/scenarios.hpp"

using namespace cat2;

namespace {

enum Exit { ok = 0, failed = 1, usage = 2, budget = 3 };

struct Global {
    int cap = 4;
    std::uint64_t budget = 50'000'000;
    std::string format = "text";
    std::string out;
};

Global g;

// Prints text or JSON per --format; --out writes the JSON to a file as well.
void emit(const Json& j, const std::string& text) {
    if (!g.out.empty()) write_json_file(g.out, j);
    if (g.format == "json") std::cout << j.dump(2) << "\n";
    else std::cout << text;
}

std::string counts_line(const SSet& x) {
    std::ostringstream s;
    s << "cells:";
    for (int n = 0; n <= x.cap; ++n) s << " " << x.count[n];
    s << "\nnondegenerate:";
    for (int n = 0; n <= x.cap; ++n) s << " " << x.nondegenerate(n).size();
    s << "\n";
    return s.str();
}

std::string twocat_line(const TwoCat& c) {
    return "objects " + std::to_string(c.n0()) + ", 1-cells " + std::to_string(c.n1()) + ", 2-cells " +
           std::to_string(c.n2()) + (c.poset_enriched ? ", poset-enriched" : "") + "\n";
}

std::string reports(const std::vector<std::string>& r) {
    if (r.empty()) return "valid\n";
    std::string s;
    for (auto& l : r) s += "violation: " + l + "\n";
    return s;
}

NamedPoset named_kind(const std::string& s) {
    if (s == "simplex") return NamedPoset::simplex;
    if (s == "partial-phi") return NamedPoset::partial_phi;
    if (s == "horn") return NamedPoset::phi_horn;
    throw FormatError("unknown named poset " + s);
}

StandardKind standard_kind(const std::string& s) {
    if (s == "simplex") return StandardKind::simplex;
    if (s == "boundary") return StandardKind::boundary;
    if (s == "horn") return StandardKind::horn;
    throw FormatError("unknown standard simplicial set " + s);
}

std::optional<int> opt_k(int k) { return k < 0 ? std::nullopt : std::optional<int>(k); }

TwoCatPtr fixture(const std::string& name) {
    if (name == "counterexample-a") return rdf2_counterexample().a;
    if (name == "counterexample-b") return rdf2_counterexample().b;
    if (name == "counterexample-a2") return rdf2_counterexample().a2;
    if (name == "z2") return share(z2_category());
    if (name == "z2-double-suspension") return z2_double_suspension();
    for (auto& nc : sample_twocats())
        if (nc.name == name) return nc.c;
    throw FormatError("unknown fixture " + name);
}

// Functors read from separate files carry their own copies of shared objects.
void rebind_src(TwoFunctor& f, const TwoCatPtr& c) {
    if (twocat_json(*f.src) != twocat_json(*c)) throw FormatError("functor source does not match");
    f.src = c;
}

// ---------------------------------------------------------------- poset

struct PosetArgs {
    std::string file, named, analyze;
    int m = 0, k = -1, xi_times = 0;
    bool chains = false;
};

int run_poset(const PosetArgs& a) {
    if (!a.analyze.empty()) {
        auto f = map_from_json(read_json_file(a.analyze));
        auto rep = analyze_sieve(f, std::nullopt);
        auto r = rep.is_sieve ? right_adjoint_retraction(f) : std::nullopt;
        Json j = {{"full_embedding", rep.full_embedding}, {"sieve", rep.is_sieve}, {"cosieve", rep.is_cosieve},
                  {"right_adjoint_retraction", r ? map_json(*r) : Json()}};
        emit(j, std::string("full embedding: ") + (rep.full_embedding ? "yes" : "no") + "\nsieve: " +
                    (rep.is_sieve ? "yes" : "no") + "\ncosieve: " + (rep.is_cosieve ? "yes" : "no") +
                    "\nright adjoint retraction: " + (r ? "yes" : "no") + "\n");
        return ok;
    }
    Poset p = !a.file.empty() ? poset_from_json(read_json_file(a.file)) : named_poset(named_kind(a.named), a.m, opt_k(a.k));
    for (int t = 0; t < a.xi_times; ++t) p = xi(p);
    std::string text = "elements " + std::to_string(p.size()) + ", covering pairs " + std::to_string(p.covers().size()) + "\n";
    Json j = poset_json(p);
    if (a.chains) {
        auto cs = chains(p);
        Json arr = Json::array();
        for (auto& c : cs) {
            arr.push_back(chain_id(p, c));
            text += chain_id(p, c) + "\n";
        }
        j["chains"] = arr;
    }
    emit(j, text);
    return ok;
}

// ---------------------------------------------------------------- sset

struct SSetArgs {
    std::string poset, standard, file;
    int m = 0, k = -1, ex_cap = 2;
    bool sd = false, ex = false, homology = false, validate = false;
};

int run_sset(const SSetArgs& a) {
    SSetPtr x;
    if (!a.file.empty()) x = sset_from_json(read_json_file(a.file));
    else if (!a.poset.empty()) x = nerve(poset_from_json(read_json_file(a.poset)), g.cap);
    else x = standard(standard_kind(a.standard.empty() ? "simplex" : a.standard), a.m, opt_k(a.k), g.cap).x;
    std::string text;
    Json j = Json::object();
    if (a.sd) {
        auto s = sd(x, g.cap);
        if (a.homology) {
            auto rep = homology_iso(s.alpha, x->cap - 1);
            text += std::string("alpha homology iso: ") + (rep.iso ? "yes" : "no") + "\n";
            j["alpha_iso"] = rep.iso;
        }
        x = s.sd;
    }
    if (a.ex) {
        auto e = ex(x, std::min(a.ex_cap, x->cap), g.budget);
        if (a.homology) {
            auto rep = homology_iso(e.beta, e.ex->cap - 1);
            text += std::string("beta homology iso: ") + (rep.iso ? "yes" : "no") + "\n";
            j["beta_iso"] = rep.iso;
        }
        x = e.ex;
    }
    text += counts_line(*x);
    j["sset"] = sset_json(*x);
    int status = ok;
    if (a.homology) {
        auto h = homology(*x, x->cap - 1);
        text += h.str() + "\n";
        j["homology"] = homology_json(h);
    }
    if (a.validate) {
        auto r = validate_sset(*x);
        text += reports(r);
        j["violations"] = r;
        if (!r.empty()) status = failed;
    }
    emit(j, text);
    return status;
}

// ---------------------------------------------------------------- twocat

struct TwoCatArgs {
    std::string file, o_file, o_named, fixture;
    int m = 0, k = -1;
    bool validate = false, nerve = false, truncations = false, interval = false;
};

int run_twocat(const TwoCatArgs& a) {
    TwoCatPtr c;
    std::optional<Poset> e;
    if (!a.file.empty()) c = share(twocat_from_json(read_json_file(a.file)));
    else if (!a.o_file.empty()) e = poset_from_json(read_json_file(a.o_file));
    else if (!a.o_named.empty()) e = named_poset(named_kind(a.o_named), a.m, opt_k(a.k));
    else if (!a.fixture.empty()) c = fixture(a.fixture);
    else throw FormatError("twocat needs --file, --o, --o-named or --fixture");
    if (e) c = o_poset(*e).c;
    if (a.interval) c = interval_product(c).c;
    std::string text = twocat_line(*c);
    Json j = {{"twocat", twocat_json(*c)}};
    int status = ok;
    if (a.validate) {
        auto r = validate_twocat(*c);
        text += reports(r);
        j["violations"] = r;
        if (!r.empty()) status = failed;
    }
    if (a.nerve) {
        auto n = nerve2(c, g.cap, g.budget);
        auto h = homology(*n.x, g.cap - 1);
        text += "Street nerve " + counts_line(*n.x) + h.str() + "\n";
        j["nerve_counts"] = n.x->count;
        j["homology"] = homology_json(h);
    }
    if (a.truncations) {
        auto b = tau_b(*c);
        b.finalize();
        auto fr = is_free_on_graph(b);
        auto ti = tau_i(*c);
        bool pc = is_poset_category(ti.cat), pe = is_poset_enriched(*c);
        text += std::string("tau_b free: ") + (fr.free ? "yes" : "no") + " (" + std::to_string(fr.generators.size()) +
                " generators)\ntau_i poset category: " + (pc ? "yes" : "no") + "\nposet-enriched: " + (pe ? "yes" : "no") + "\n";
        j["tau_b_free"] = fr.free;
        j["tau_b_generators"] = fr.generators.size();
        j["tau_i_poset"] = pc;
        j["poset_enriched"] = pe;
    }
    emit(j, text);
    return status;
}

// ---------------------------------------------------------------- oplax

struct OplaxArgs {
    std::string file, retract, i_file, r_file;
};

int run_oplax(const OplaxArgs& a) {
    if (!a.file.empty()) {
        auto f = oplax_from_json(read_json_file(a.file));
        auto r = validate_oplax(f);
        emit(Json{{"violations", r}}, reports(r));
        return r.empty() ? ok : failed;
    }
    if (!a.retract.empty()) {
        auto s = retract_from_json(read_json_file(a.retract));
        auto rep = check_retract_structure(s);
        Json j = {{"retraction", rep.retraction}, {"homotopy", rep.homotopy}, {"rdf1", rep.rdf1}, {"rdf2", rep.rdf2}};
        emit(j, rep.ok() ? "retract structure: RDF1 and RDF2 hold\n" : reports(rep.all()));
        return rep.ok() ? ok : failed;
    }
    if (a.i_file.empty() || a.r_file.empty()) throw FormatError("oplax needs --file, --retract, or --i with --r");
    auto i = functor_from_json(read_json_file(a.i_file));
    auto r = functor_from_json(read_json_file(a.r_file));
    r.src = i.tgt;
    r.tgt = i.src;
    auto hs = enumerate_relative_homotopies(i, r, g.budget);
    Json arr = Json::array();
    int rdf2 = 0;
    for (auto& h : hs) {
        bool good = check_retract_structure(RetractStructure{i, r, h}).rdf2.empty();
        rdf2 += good;
        arr.push_back({{"rdf2", good}, {"h", oplax_json(h.h)}});
    }
    emit(Json{{"homotopies", arr}},
         "relative homotopies: " + std::to_string(hs.size()) + "\nsatisfying RDF2: " + std::to_string(rdf2) + "\n");
    return ok;
}

// ---------------------------------------------------------------- pushout

struct PushoutArgs {
    std::string kind = "2cat", i_file, u_file, sieve_file, fixture, extend;
    bool verify = false;
    int max_word = 8;
    std::size_t max_states = 100'000;
};

int run_pushout(const PushoutArgs& a) {
    PushoutLimits lim{a.max_word, a.max_states};
    TwoFunctor i, u;
    std::optional<RetractStructure> s;
    if (!a.extend.empty()) {
        s = retract_from_json(read_json_file(a.extend));
        i = s->i;
    }
    if (a.fixture == "rdf2-counterexample") {
        auto ex = rdf2_counterexample();
        i = ex.i;
        u = ex.u;
    } else if (!a.fixture.empty()) {
        throw FormatError("unknown pushout fixture " + a.fixture);
    } else {
        if (a.u_file.empty()) throw FormatError("pushout needs --u (or --fixture)");
        u = functor_from_json(read_json_file(a.u_file));
    }
    CocartSquare sq;
    if (a.kind == "o") {
        if (a.sieve_file.empty()) throw FormatError("--kind o needs --sieve");
        auto m = map_from_json(read_json_file(a.sieve_file));
        auto oe = o_poset(m.source), of = o_poset(m.target);
        rebind_src(u, oe.c);
        sq = pushout_o_sieve(m, oe, of, u);
    } else {
        if (a.fixture.empty() && !s) {
            if (a.i_file.empty()) throw FormatError("pushout needs --i");
            i = functor_from_json(read_json_file(a.i_file));
        }
        if (a.fixture.empty()) rebind_src(u, i.src);
        if (a.kind == "cat") sq = pushout_sieve_cat(i, u, lim);
        else if (a.kind == "2cat") sq = pushout_sieve_2cat(i, u, lim);
        else throw FormatError("--kind must be cat, 2cat or o");
    }
    std::string text = "apex: " + twocat_line(*sq.apex());
    Json j = {{"square", square_json(sq)}};
    int status = ok;
    if (a.verify) {
        auto sv = check_sieve_square(sq);
        CocartesianOptions opt;
        opt.budget = g.budget;
        auto rep = verify_cocartesian(sq, {}, opt);
        text += "sieve square checks: " + reports(sv);
        text += "cocartesian against " + std::to_string(rep.probes) + " probes: " + (rep.ok ? "yes" : "no") + "\n";
        for (auto& f : rep.failures) text += "failure: " + f + "\n";
        j["sieve_square"] = sv;
        j["cocartesian"] = rep.ok;
        j["probes"] = rep.probes;
        if (!sv.empty() || !rep.ok) status = failed;
    }
    if (s) {
        auto t = extend_retract(sq, *s);
        auto rep = check_retract_structure(t);
        auto compat = extension_compatibility(sq, *s, t);
        text += std::string("extended structure: ") + (rep.ok() ? "RDF1 and RDF2 hold" : "invalid") +
                ", compatibility " + (compat.empty() ? "holds" : "fails") + "\n";
        j["extension"] = retract_json(t);
        if (!rep.ok() || !compat.empty()) status = failed;
    }
    emit(j, text);
    return status;
}

// ---------------------------------------------------------------- scenario, gen-cofib

int run_scenarios(const std::vector<std::string>& names, bool list) {
    if (list) {
        Json arr = Json::array();
        std::string text;
        for (auto& s : scenario_catalog()) {
            arr.push_back({{"name", s.name}, {"criterion", s.criterion}, {"summary", s.summary}});
            text += s.name + "  " + s.summary + "\n";
        }
        emit(arr, text);
        return ok;
    }
    std::vector<std::string> todo = names;
    if (todo.empty())
        for (auto& s : scenario_catalog()) todo.push_back(s.name);
    Collector col;
    int status = ok;
    Json arr = Json::array();
    std::string text;
    for (auto& name : todo) {
        auto rep = run_scenario(name, &col);
        Json lines = Json::array();
        for (auto& l : rep.lines) lines.push_back({{"pass", l.pass}, {"tag", tag_name(l.tag)}, {"text", l.text}});
        arr.push_back({{"name", rep.name}, {"status", status_name(rep.status)}, {"seconds", rep.seconds},
                       {"error", rep.error}, {"lines", lines}});
        text += format_report(rep);
        if (rep.status == Status::budget && status == ok) status = budget;
        if (rep.status == Status::fail) status = failed;
    }
    emit(arr, text);
    return status;
}

int run_gen_cofib(int m, int max_m) {
    auto c = gen_cofibration(m, max_m);
    Json j = {{"m", m},
              {"functor", functor_json(c.f)},
              {"sieve", c.sieve.is_sieve},
              {"cosieve", c.sieve.is_cosieve},
              {"factorization", {{"k", map_json(c.factor.k)}, {"j", map_json(c.factor.j)}, {"r", map_json(c.factor.r)}}},
              {"retract", retract_json(c.rdf.s)},
              {"retract_valid", c.rdf_report.ok()}};
    std::string text = "source: " + twocat_line(*c.f.src) + "target: " + twocat_line(*c.f.tgt) +
                       "sieve: " + (c.sieve.is_sieve ? "yes" : "no") + "\nretract structure on O(k): " +
                       (c.rdf_report.ok() ? "RDF1 and RDF2 hold" : "invalid") + "\n";
    emit(j, text);
    return c.sieve.is_sieve && c.rdf_report.ok() ? ok : failed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite 2-categories, Street nerves, oplax retracts and pushouts along sieves"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--cap", g.cap, "simplicial truncation degree")->capture_default_str()->check(CLI::Range(1, 8));
    app.add_option("--budget", g.budget, "node budget for exhaustive searches")->capture_default_str();
    app.add_option("--format", g.format, "output format")->capture_default_str()->check(CLI::IsMember({"text", "json"}));
    app.add_option("--out", g.out, "also write the JSON result to this file");

    PosetArgs pa;
    auto* poset = app.add_subcommand("poset", "build a poset from a file or a named family");
    poset->add_option("--file", pa.file, "poset JSON");
    poset->add_option("--named", pa.named, "simplex | partial-phi | horn");
    poset->add_option("--m", pa.m, "dimension");
    poset->add_option("--k", pa.k, "horn index");
    poset->add_option("--xi", pa.xi_times, "apply xi this many times");
    poset->add_flag("--chains", pa.chains, "list nonempty chains");
    poset->add_option("--analyze", pa.analyze, "monotone map JSON to classify as a sieve or cosieve");

    SSetArgs sa;
    auto* sset = app.add_subcommand("sset", "simplicial sets: nerves, standard shapes, Sd, Ex, homology");
    sset->add_option("--file", sa.file, "simplicial set JSON");
    sset->add_option("--poset", sa.poset, "nerve of this poset JSON");
    sset->add_option("--standard", sa.standard, "simplex | boundary | horn");
    sset->add_option("--m", sa.m, "dimension");
    sset->add_option("--k", sa.k, "horn index");
    sset->add_flag("--sd", sa.sd, "apply Sd (with --homology, test alpha)");
    sset->add_flag("--ex", sa.ex, "apply Ex (with --homology, test beta)");
    sset->add_option("--ex-cap", sa.ex_cap, "truncation degree for Ex")->capture_default_str()->check(CLI::Range(1, 8));
    sset->add_flag("--homology", sa.homology, "integral homology through cap - 1");
    sset->add_flag("--validate", sa.validate, "run the simplicial identity suite");

    TwoCatArgs ta;
    auto* twocat = app.add_subcommand("twocat", "2-categories: validation, Street nerve, truncations");
    twocat->add_option("--file", ta.file, "2-category JSON");
    twocat->add_option("--o", ta.o_file, "O(E) for this poset JSON");
    twocat->add_option("--o-named", ta.o_named, "O(E) for a named poset");
    twocat->add_option("--m", ta.m, "dimension of the named poset");
    twocat->add_option("--k", ta.k, "horn index of the named poset");
    twocat->add_option("--fixture", ta.fixture, "built-in example");
    twocat->add_flag("--interval", ta.interval, "replace by the interval product");
    twocat->add_flag("--validate", ta.validate, "run the axiom suite");
    twocat->add_flag("--nerve", ta.nerve, "Street nerve counts and homology");
    twocat->add_flag("--truncations", ta.truncations, "tau_b freeness, tau_i, poset enrichment");

    OplaxArgs oa;
    auto* oplax = app.add_subcommand("oplax", "oplax functors and retract structures");
    oplax->add_option("--file", oa.file, "oplax functor JSON to validate");
    oplax->add_option("--retract", oa.retract, "retract structure JSON to check");
    oplax->add_option("--i", oa.i_file, "sieve 2-functor JSON");
    oplax->add_option("--r", oa.r_file, "retraction 2-functor JSON; enumerates relative homotopies");

    PushoutArgs xa;
    auto* pushout = app.add_subcommand("pushout", "pushouts along sieves");
    pushout->add_option("--kind", xa.kind, "cat | 2cat | o")->capture_default_str();
    pushout->add_option("--i", xa.i_file, "sieve 2-functor JSON");
    pushout->add_option("--u", xa.u_file, "2-functor JSON out of the sieve's source");
    pushout->add_option("--sieve", xa.sieve_file, "poset sieve JSON for --kind o");
    pushout->add_option("--fixture", xa.fixture, "rdf2-counterexample");
    pushout->add_flag("--verify", xa.verify, "check the sieve square and the universal property");
    pushout->add_option("--extend", xa.extend, "retract structure JSON on i to extend along the square");
    pushout->add_option("--max-word", xa.max_word, "longest rewriting rule")->capture_default_str();
    pushout->add_option("--max-states", xa.max_states, "rewriting rules and normal forms per hom")->capture_default_str();

    std::vector<std::string> names;
    bool list = false;
    auto* scenario = app.add_subcommand("scenario", "run named reproductions; all when none is given");
    scenario->add_option("names", names, "scenario names");
    scenario->add_flag("--list", list, "list scenarios");

    int m = 0, max_m = 3;
    auto* gen = app.add_subcommand("gen-cofib", "emit the m-th generating cofibration");
    gen->add_option("m", m, "index")->required()->check(CLI::NonNegativeNumber);
    gen->add_option("--max-m", max_m, "largest index attempted")->capture_default_str();

    CLI11_PARSE(app, argc, argv);
    try {
        if (poset->parsed()) return run_poset(pa);
        if (sset->parsed()) return run_sset(sa);
        if (twocat->parsed()) return run_twocat(ta);
        if (oplax->parsed()) return run_oplax(oa);
        if (pushout->parsed()) return run_pushout(xa);
        if (scenario->parsed()) return run_scenarios(names, list);
        if (gen->parsed()) return run_gen_cofib(m, max_m);
    } catch (const BudgetError& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return budget;
    } catch (const NormalizationBudgetExceeded& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return budget;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    }
    return usage;
}
