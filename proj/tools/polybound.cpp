// polybound: certified bounds for the maximum of a polynomial over a
// rational polytope, exact integration backends, grid-summation comparison.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "polybound/bounds.hpp"
#include "polybound/decompose.hpp"
#include "polybound/gridsum.hpp"
#include "polybound/integrate.hpp"
#include "polybound/polynomial.hpp"
#include "polybound/polytope.hpp"

using namespace polybound;

namespace {

struct CommonOptions {
    std::string poly_path;
    std::string polytope_path;
    std::string backend = "linear-forms";
    std::string shift = "auto";
    std::string objective = "sparse";
    std::string lipschitz_method = "per-monomial";
    std::string sparsity_weight = "1";
    int digits = 12;
    std::optional<int> t_start;
};

Backend parse_backend(const std::string& name) {
    if (name == "linear-forms") return Backend::LinearForms;
    if (name == "handelman") return Backend::Handelman;
    throw ParseError("unknown backend '" + name + "'");
}

HandelmanObjective parse_objective(const std::string& name) {
    if (name == "sparse") return HandelmanObjective::SparseAndShift;
    if (name == "shift-only") return HandelmanObjective::ShiftOnly;
    throw ParseError("unknown objective '" + name + "'");
}

// "12" | "4,8,12" | "10..40:10"
std::vector<long> parse_long_list(const std::string& text) {
    std::vector<long> out;
    auto parse_one = [](const std::string& s) {
        size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size()) throw ParseError("bad integer '" + s + "'");
        return v;
    };
    if (auto dots = text.find(".."); dots != std::string::npos) {
        long lo = parse_one(text.substr(0, dots));
        std::string rest = text.substr(dots + 2);
        long step = 1;
        if (auto colon = rest.find(':'); colon != std::string::npos) {
            step = parse_one(rest.substr(colon + 1));
            rest = rest.substr(0, colon);
        }
        long hi = parse_one(rest);
        if (step < 1 || hi < lo) throw ParseError("bad range '" + text + "'");
        for (long v = lo; v <= hi; v += step) out.push_back(v);
        return out;
    }
    size_t start = 0;
    while (start <= text.size()) {
        size_t comma = text.find(',', start);
        std::string piece = text.substr(start, comma == std::string::npos ? comma : comma - start);
        if (!piece.empty()) out.push_back(parse_one(piece));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (out.empty()) throw ParseError("empty integer list");
    return out;
}

int run_vertices(const std::string& polytope_path) {
    HRep p = parse_hrep_file(polytope_path);
    auto vs = enumerate_vertices(p);
    std::cout << "vertices " << vs.size() << "\n";
    for (const auto& v : vs) {
        for (size_t j = 0; j < v.point.size(); ++j)
            std::cout << (j ? " " : "") << v.point[j];
        std::cout << "\n";
    }
    return 0;
}

int run_volume(const std::string& polytope_path, int digits) {
    HRep p = parse_hrep_file(polytope_path);
    Rational vol = volume(p);
    std::cout << "volume = " << vol << "\n";
    std::cout << "decimal ~ " << round_half_even(vol, digits).str() << "\n";
    return 0;
}

int run_integrate(const CommonOptions& opt, long k) {
    if (k < 1) throw ParseError("--k must be >= 1");
    Polynomial f = parse_polynomial_file(opt.poly_path);
    HRep p = parse_hrep_file(opt.polytope_path);
    Backend backend = parse_backend(opt.backend);
    bool use_shift = opt.shift == "auto";
    if (opt.shift != "auto" && opt.shift != "none")
        throw ParseError("unknown shift mode '" + opt.shift + "'");
    if (backend == Backend::Handelman && !use_shift)
        throw ParseError("the handelman backend requires --shift auto");

    Rational shift(0);
    Rational result;
    if (use_shift) {
        int t0 = opt.t_start.value_or(f.is_zero() ? 0 : f.degree());
        CertificateSearch search =
            find_certificate(f, p, t0, parse_objective(opt.objective),
                             rational_from_string(opt.sparsity_weight));
        shift = search.certificate.shift;
        if (backend == Backend::Handelman) {
            auto powered = certificate_pow(search.certificate, static_cast<unsigned>(k));
            result = integrate_handelman_monomials(p, powered);
        } else {
            Polynomial shifted = f;
            shifted.add_term(Monomial(static_cast<size_t>(p.dim)), shift);
            result = integrate_polynomial(p, poly_pow(shifted, static_cast<unsigned>(k)));
        }
        std::cout << "s = " << shift << "\n";
    } else {
        result = integrate_polynomial(p, poly_pow(f, static_cast<unsigned>(k)));
    }
    std::cout << "k = " << k << "\n";
    std::cout << "integral = " << result << "\n";
    std::cout << "decimal ~ " << round_half_even(result, opt.digits).str() << "\n";
    return 0;
}

int run_bounds(const CommonOptions& opt, const std::string& k_text,
               const std::string& epsilon_text, const std::string& upper_text,
               const std::string& delta_text, const std::string& cdelta_text,
               const std::string& lipschitz_text) {
    Polynomial f = parse_polynomial_file(opt.poly_path);
    HRep p = parse_hrep_file(opt.polytope_path);

    PipelineOptions options;
    options.backend = parse_backend(opt.backend);
    if (opt.shift == "auto") options.shift = ShiftMode::Auto;
    else if (opt.shift == "none") options.shift = ShiftMode::None;
    else throw ParseError("unknown shift mode '" + opt.shift + "'");
    options.objective = parse_objective(opt.objective);
    options.sparsity_weight = rational_from_string(opt.sparsity_weight);
    options.digits = opt.digits;
    options.t_start = opt.t_start;
    if (opt.lipschitz_method == "whole")
        options.lipschitz_method = LipschitzMethod::WholePolynomial;
    else if (opt.lipschitz_method == "per-monomial")
        options.lipschitz_method = LipschitzMethod::PerMonomial;
    else
        throw ParseError("unknown lipschitz method '" + opt.lipschitz_method + "'");
    if (!lipschitz_text.empty())
        options.lipschitz_override = rational_from_string(lipschitz_text);
    if (!upper_text.empty()) options.upper = rational_from_string(upper_text);
    options.delta = rational_from_string(delta_text);
    options.c_delta = rational_from_string(cdelta_text);

    if (k_text.empty() == epsilon_text.empty())
        throw ParseError("bounds needs exactly one of --k and --epsilon");

    std::vector<long> ks;
    PipelineContext ctx = [&] {
        if (!epsilon_text.empty()) options.epsilon = rational_from_string(epsilon_text);
        return prepare_pipeline(p, f, options);
    }();

    if (!epsilon_text.empty()) {
        KChoice choice = pipeline_k_choice(ctx);
        std::cout << "epsilon = " << *options.epsilon << "\n";
        std::cout << "components:";
        for (const Rational& c : choice.components)
            std::cout << ' ' << round_half_even(c, 4).str();
        std::cout << "\n";
        std::cout << "chosen k = " << choice.k << "\n";
        ks.push_back(choice.k);
    } else {
        ks = parse_long_list(k_text);
    }

    std::vector<BoundsReport> reports;
    for (long k : ks) reports.push_back(bounds_for_k(ctx, k));
    std::cout << format_report_rows(reports);
    for (const auto& r : reports) {
        std::cout << "\n";
        std::cout << format_report_keyvalues(r);
    }
    return 0;
}

int run_gridsum(const CommonOptions& opt, const std::string& k_text,
                const std::string& m_text, bool with_limit) {
    Polynomial f = parse_polynomial_file(opt.poly_path);
    HRep p = parse_hrep_file(opt.polytope_path);
    std::vector<long> ks = parse_long_list(k_text);
    if (ks.size() != 1) throw ParseError("gridsum takes a single --k");
    std::vector<long> ms_raw = parse_long_list(m_text);
    std::vector<unsigned long> ms;
    for (long m : ms_raw) {
        if (m < 1) throw ParseError("--m entries must be >= 1");
        ms.push_back(static_cast<unsigned long>(m));
    }

    std::cout << "    m     count  L_{k,m} >=\n";
    std::vector<GridSumResult> rows;
    for (unsigned long m : ms) rows.push_back(grid_lower_bound(p, f, ks[0], m, opt.digits));
    for (const auto& r : rows) {
        std::string ms_str = std::to_string(r.m);
        std::string count_str = std::to_string(r.count);
        std::cout << std::string(5 > ms_str.size() ? 5 - ms_str.size() : 0, ' ') << ms_str
                  << std::string(10 > count_str.size() ? 10 - count_str.size() : 0, ' ')
                  << count_str << "  " << r.lower.str() << "\n";
    }
    if (with_limit) {
        auto root = lower_bound(p, f, ks[0], opt.digits).second;
        std::cout << "L_k >= " << root.str() << "\n";
    }
    return 0;
}

int run_decompose(const CommonOptions& opt, const std::string& out_path) {
    Polynomial f = parse_polynomial_file(opt.poly_path);
    HRep p = parse_hrep_file(opt.polytope_path);
    int t0 = opt.t_start.value_or(f.is_zero() ? 0 : f.degree());

    auto forms = poly_to_linear_forms(f);
    CertificateSearch search = find_certificate(f, p, t0, parse_objective(opt.objective),
                                                rational_from_string(opt.sparsity_weight));
    size_t plf_terms = forms.size();
    size_t handelman_terms = search.certificate.monomials.size();
    std::cout << "linear-forms terms = " << plf_terms << "\n";
    std::cout << "handelman terms = " << handelman_terms << "\n";
    std::cout << "t = " << search.certificate.degree << "\n";
    std::cout << "s = " << search.certificate.shift << "\n";
    if (plf_terms > 0) {
        Rational improvement =
            Rational(100) *
            Rational(static_cast<long>(plf_terms) - static_cast<long>(handelman_terms),
                     static_cast<long>(plf_terms));
        improvement.canonicalize();
        std::cout << "improvement = " << round_half_even(improvement, 1).str() << "%\n";
    }
    std::string text = serialize_certificate(search.certificate);
    if (out_path.empty()) {
        std::cout << "certificate:\n" << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw ParseError("cannot write certificate file '" + out_path + "'");
        out << text;
        std::cout << "certificate written to " << out_path << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified bounds for polynomial maxima over rational polytopes"};
    app.require_subcommand(1);

    CommonOptions opt;
    opt.shift.clear();  // resolved per subcommand after parsing
    std::string k_text, epsilon_text, upper_text, m_text, out_path, lipschitz_text;
    std::string delta_text = "1/10", cdelta_text = "81/20";
    bool with_limit = false;

    auto add_common = [&](CLI::App* cmd, bool needs_poly) {
        if (needs_poly)
            cmd->add_option("--poly", opt.poly_path, "polynomial file")->required();
        cmd->add_option("--polytope", opt.polytope_path, "H-rep file")->required();
        cmd->add_option("--digits", opt.digits, "printed fractional digits");
    };

    CLI::App* vertices_cmd = app.add_subcommand("vertices", "list the polytope's vertices");
    vertices_cmd->add_option("--polytope", opt.polytope_path, "H-rep file")->required();

    CLI::App* volume_cmd = app.add_subcommand("volume", "exact volume");
    volume_cmd->add_option("--polytope", opt.polytope_path, "H-rep file")->required();
    volume_cmd->add_option("--digits", opt.digits, "printed fractional digits");

    CLI::App* integrate_cmd =
        app.add_subcommand("integrate", "exact integral of f^k over the polytope");
    add_common(integrate_cmd, true);
    integrate_cmd->add_option("--k", k_text, "power k (default 1)");
    integrate_cmd->add_option("--backend", opt.backend, "linear-forms | handelman");
    integrate_cmd->add_option("--shift", opt.shift, "auto | none");
    integrate_cmd->add_option("--t", opt.t_start, "starting Handelman degree");
    integrate_cmd->add_option("--objective", opt.objective, "sparse | shift-only");
    integrate_cmd->add_option("--sparsity-weight", opt.sparsity_weight,
                              "weight of sum(c) in the certificate objective");

    CLI::App* bounds_cmd = app.add_subcommand("bounds", "L_k and U_k bound reports");
    add_common(bounds_cmd, true);
    bounds_cmd->add_option("--k", k_text, "k value, list, or range lo..hi:step");
    bounds_cmd->add_option("--epsilon", epsilon_text, "target relative gap");
    bounds_cmd->add_option("--upper", upper_text, "initial upper bound U");
    bounds_cmd->add_option("--delta", delta_text, "delta of the k chooser");
    bounds_cmd->add_option("--cdelta", cdelta_text, "c_delta of the k chooser");
    bounds_cmd->add_option("--backend", opt.backend, "linear-forms | handelman");
    bounds_cmd->add_option("--shift", opt.shift, "auto | none");
    bounds_cmd->add_option("--t", opt.t_start, "starting Handelman degree");
    bounds_cmd->add_option("--objective", opt.objective, "sparse | shift-only");
    bounds_cmd->add_option("--sparsity-weight", opt.sparsity_weight,
                           "weight of sum(c) in the certificate objective");
    bounds_cmd->add_option("--lipschitz", lipschitz_text, "Lipschitz constant override");
    bounds_cmd->add_option("--lipschitz-method", opt.lipschitz_method,
                           "whole | per-monomial");

    CLI::App* gridsum_cmd = app.add_subcommand("gridsum", "grid-summation lower bounds");
    add_common(gridsum_cmd, true);
    gridsum_cmd->add_option("--k", k_text, "power k")->required();
    gridsum_cmd->add_option("--m", m_text, "grid refinement(s): value, list, or range")
        ->required();
    gridsum_cmd->add_flag("--limit", with_limit, "also print the integration limit L_k");

    CLI::App* decompose_cmd =
        app.add_subcommand("decompose", "compare decompositions, emit a certificate");
    add_common(decompose_cmd, true);
    decompose_cmd->add_option("--t", opt.t_start, "starting Handelman degree");
    decompose_cmd->add_option("--objective", opt.objective, "sparse | shift-only");
    decompose_cmd->add_option("--sparsity-weight", opt.sparsity_weight,
                              "weight of sum(c) in the certificate objective");
    decompose_cmd->add_option("--out", out_path, "certificate output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(vertices_cmd)) return run_vertices(opt.polytope_path);
        if (app.got_subcommand(volume_cmd)) return run_volume(opt.polytope_path, opt.digits);
        if (app.got_subcommand(integrate_cmd)) {
            if (opt.shift.empty())
                opt.shift = (opt.backend == "handelman") ? "auto" : "none";
            long k = 1;
            if (!k_text.empty()) {
                auto ks = parse_long_list(k_text);
                if (ks.size() != 1) throw ParseError("integrate takes a single --k");
                k = ks[0];
            }
            return run_integrate(opt, k);
        }
        if (app.got_subcommand(bounds_cmd)) {
            if (opt.shift.empty()) opt.shift = "auto";
            return run_bounds(opt, k_text, epsilon_text, upper_text, delta_text, cdelta_text,
                              lipschitz_text);
        }
        if (app.got_subcommand(gridsum_cmd)) return run_gridsum(opt, k_text, m_text, with_limit);
        if (app.got_subcommand(decompose_cmd)) return run_decompose(opt, out_path);
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const MathError& e) {
        std::cerr << "math error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
