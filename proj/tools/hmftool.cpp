#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "hmf/asympt.hpp"
#include "hmf/borcherds.hpp"
#include "hmf/characters.hpp"
#include "hmf/kacmoody.hpp"
#include "hmf/weilrep.hpp"
#include "hmf/whsolver.hpp"

using json = nlohmann::ordered_json;
using namespace hmf;

namespace {

std::string rat_str(const Rat& r) {
    return r.get_den() == 1 ? r.get_num().get_str() : r.get_num().get_str() + "/" + r.get_den().get_str();
}

json quad_json(const QuadElem& x) {
    return {{"u", x.u.get_str()}, {"v", x.v.get_str()}, {"w", x.w.get_str()}, {"N1", x.n1}};
}

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& msg) {
    if (!cond) throw ConfigError(msg);
}

json series_json(const QSeries& s) {
    json out = json::object();
    for (auto& [e, c] : s.coeffs()) out[rat_str(e)] = rat_str(c);
    return out;
}

void emit(const json& j, const std::string& path) {
    if (path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream f(path);
        if (!f) throw ConfigError("cannot open output file: " + path);
        f << j.dump(2) << "\n";
    }
}

long threads_knob() {
    const char* env = std::getenv("FORGE_THREADS");
    if (!env) return 1;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) throw ConfigError("FORGE_THREADS must be a positive integer");
    return v;
}

const std::set<long> kSolverLevels = {5, 8, 12, 13, 17, 21};
const std::set<long> kLiftLevels = {8, 12, 21};

json cmd_basis(long N, long m, long P) {
    require(kSolverLevels.count(N) == 1, "basis: --disc must be one of 5, 8, 12, 13, 17, 21");
    require(m >= 1, "basis: --m must be >= 1");
    require(P > m, "basis: --prec must exceed --m");
    if (!exists_fm(N, m)) throw SolverError("f_m does not exist at this discriminant");
    // the rank certificate needs a minimum number of vanishing conditions, so
    // small output precisions still solve at a working floor
    const WHForm& f = basis_form(N, m, std::max(P, m + 100));
    json j{{"command", "basis"}, {"N", f.N}, {"m", f.m}, {"prec", P}, {"s_m", f.s_m},
           {"space_dim", f.space_dim}, {"rank", f.rank}, {"weight", f.weight}};
    j["coeffs"] = series_json(f.coeffs.truncated(Rat(P)));
    return j;
}

json cmd_existence(long N, long maxm) {
    require(is_fundamental_discriminant(N) && N > 1, "existence: --disc must be a fundamental discriminant > 1");
    if (maxm <= 0) maxm = 3 * N;
    json rows = json::array();
    for (long m = 1; m <= maxm; ++m) {
        json row{{"m", m}};
        try {
            row["exists"] = exists_fm(N, m);
        } catch (const SolverError& e) {
            row["undecided"] = e.what();
        }
        rows.push_back(row);
    }
    return {{"command", "existence"}, {"N", N}, {"max", maxm}, {"rows", rows}};
}

json cmd_sturm(long N, long P) {
    std::vector<long> levels = N == 0 ? std::vector<long>{12, 8, 21, 17} : std::vector<long>{N};
    for (long lev : levels)
        require(lev == 8 || lev == 12 || lev == 17 || lev == 21,
                "sturm: --disc must be one of 8, 12, 17, 21");
    json reports = json::array();
    for (long lev : levels) {
        SturmReport r = integrality_report(lev, std::max(P, 101L));
        reports.push_back({{"N", r.N}, {"bound", r.bound}, {"weight", r.weight},
                           {"half_shift", r.used_half_shift}, {"integral", r.integral}});
    }
    return {{"command", "sturm"}, {"prec", P}, {"reports", reports}};
}

json cmd_eisenstein(long N, long P) {
    require(is_fundamental_discriminant(N) && N > 1, "eisenstein: --disc must be a fundamental discriminant > 1");
    auto [eps, eps_star] = epsilon_vectors(N);
    QSeries E = eisenstein_delta(N, 2, eps_star, Rat(P));
    auto signs = [](const SignVector& v) {
        json o = json::object();
        for (size_t i = 0; i < v.primes.size(); ++i) o[std::to_string(v.primes[i])] = v.sign[i];
        return o;
    };
    json j{{"command", "eisenstein"}, {"N", N}, {"weight", 2}, {"prec", P},
           {"eps", signs(eps)}, {"eps_star", signs(eps_star)}};
    j["series"] = series_json(E);
    return j;
}

json cmd_dim(long N, int k) {
    require(is_fundamental_discriminant(N) && N > 1, "dim: --disc must be a fundamental discriminant > 1");
    require(k >= 2 && k % 2 == 0, "dim: --weight must be even and >= 2");
    long cusp = dim_cusp(N, k, chi_D(N));
    long eis = eisenstein_dim_primitive(N, k);
    return {{"command", "dim"}, {"N", N}, {"weight", k},
            {"cusp", cusp}, {"eisenstein", eis}, {"total", cusp + eis}};
}

json cmd_weilrep(long N) {
    require(is_fundamental_discriminant(N) && N > 1, "weilrep: --disc must be a fundamental discriminant > 1");
    const DiscForm& D = disc_form_cached(N);
    WeilChecks c = weil_relation_checks(D);
    json sup = json::array();
    for (long r : support_residues(D)) sup.push_back(r);
    return {{"command", "weilrep"}, {"N", N}, {"order", D.order()},
            {"checks", {{"unitary", c.unitary}, {"s_squared", c.s_squared},
                        {"braid", c.braid}, {"milgram", c.milgram}}},
            {"support_residues", sup}};
}

json cmd_weyl(long N, long P) {
    require(kLiftLevels.count(N) == 1, "weyl: --disc must be one of 8, 12, 21");
    const WHForm& f = basis_form(N, 1, std::max(P, 101L));
    WeylChamber W = weyl_chamber(f);
    QuadElem rho = weyl_vector(f, W);
    return {{"command", "weyl"}, {"N", N}, {"prec", P},
            {"rho", quad_json(rho)},
            {"matches_closed_form", rho == weyl_vector_closed(W.K)},
            {"chamber", {{"r_minus", quad_json(W.r_minus)}, {"r_plus", quad_json(W.r_plus)}}}};
}

json cmd_borcherds(long N, long m, const Rat& B, long P) {
    require(kLiftLevels.count(N) == 1, "borcherds: --disc must be one of 8, 12, 21");
    require(m == 1, "borcherds: only --m 1 is supported");
    require(B > 0, "borcherds: --grade-bound must be positive");
    const WHForm& f = basis_form(N, m, std::max(P, 101L));
    WeylChamber W = weyl_chamber(f);
    ProductExpansion Psi = expand_psi(f, W, B);
    Rat weight = Rat(s_factor(0, N)) * f.coeffs.coeff(Rat(0)) / Rat(2);
    json terms = json::array();
    for (auto& [mu, c] : Psi.terms)
        terms.push_back({{"mu", quad_json(mu)}, {"coeff", c.get_str()}});
    return {{"command", "borcherds"}, {"N", N}, {"m", m}, {"prec", P},
            {"grade_bound", rat_str(B)}, {"weyl_vector", quad_json(Psi.weyl_vector)},
            {"weight", rat_str(weight)}, {"terms", terms}};
}

json cmd_multtable(long a, const Rat& B, long P) {
    require(a >= 3, "multtable: --a must be >= 3");
    json rows = json::array();
    for (auto& r : mult_table(a, B, std::max(P, 101L)))
        rows.push_back({{"nu", quad_json(r.nu)}, {"n", r.n}, {"s", r.s},
                        {"a", rat_str(r.a)}, {"mult", r.mult.get_str()}});
    return {{"command", "multtable"}, {"a", a}, {"N", cartan_data(a).K.N},
            {"grade_bound", rat_str(B)}, {"prec", P}, {"rows", rows}};
}

const std::set<std::pair<long, long>> kAsymptCases = {{12, 1}, {12, 12}, {8, 1}, {8, 8}, {21, 1}};

json cmd_asympt(long N, long m, long from, long to, long P, bool csv) {
    require(kAsymptCases.count({N, m}) == 1,
            "asympt: supported (disc, m) pairs are (12,1), (12,12), (8,1), (8,8), (21,1)");
    require(from >= 1 && to >= from, "asympt: need 1 <= --from <= --to");
    require(to < P, "asympt: --to must be below --prec");
    const WHForm& f = basis_form(N, m, std::max(P, 101L));
    auto rows = asympt_report(f, from, to);
    if (csv) {
        std::cout << "n,exact,main,relerr,bound\n";
        for (auto& r : rows)
            std::cout << r.n << "," << rat_str(r.exact) << "," << fmt_double(r.main) << ","
                      << fmt_double(r.rel_err) << "," << fmt_double(r.bound) << "\n";
        return json();  // already emitted
    }
    json jrows = json::array();
    for (auto& r : rows)
        jrows.push_back({{"n", r.n}, {"exact", rat_str(r.exact)}, {"main", fmt_double(r.main)},
                         {"relerr", fmt_double(r.rel_err)}, {"bound", fmt_double(r.bound)}});
    return {{"command", "asympt"}, {"N", N}, {"m", m}, {"prec", P},
            {"from", from}, {"to", to}, {"rows", jrows}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computations with weight-0 weakly holomorphic forms and their lifts"};
    app.require_subcommand(1);

    long N = 0, m = 1, P = 200, maxm = 0, from = 1, to = 20, a = 3;
    int k = 2;
    double grade_bound = 5.0;
    bool csv = false;
    std::string out_path;

    auto add_json_opt = [&](CLI::App* c) {
        c->add_option("--json", out_path, "write JSON to this file (default: stdout)")->expected(0, 1);
    };

    auto* c_basis = app.add_subcommand("basis", "solve for the basis form f_m");
    c_basis->add_option("--disc", N, "fundamental discriminant")->required();
    c_basis->add_option("--m", m, "pole order")->required();
    c_basis->add_option("--prec", P, "coefficient precision");
    add_json_opt(c_basis);

    auto* c_exist = app.add_subcommand("existence", "existence pattern of f_m");
    c_exist->add_option("--disc", N, "fundamental discriminant")->required();
    c_exist->add_option("--max", maxm, "largest m to test (default 3N)");
    add_json_opt(c_exist);

    auto* c_sturm = app.add_subcommand("sturm", "integrality certification via Sturm bounds");
    c_sturm->add_option("--disc", N, "level (default: all four)");
    c_sturm->add_option("--prec", P, "coefficient precision");
    add_json_opt(c_sturm);

    auto* c_eis = app.add_subcommand("eisenstein", "dual weight-2 Eisenstein series");
    c_eis->add_option("--disc", N, "fundamental discriminant")->required();
    c_eis->add_option("--prec", P, "coefficient precision");
    add_json_opt(c_eis);

    auto* c_dim = app.add_subcommand("dim", "dimension of the relevant form space");
    c_dim->add_option("--disc", N, "fundamental discriminant")->required();
    c_dim->add_option("--weight", k, "even weight")->required();
    add_json_opt(c_dim);

    auto* c_weil = app.add_subcommand("weilrep", "Weil representation relation checks");
    c_weil->add_option("--disc", N, "fundamental discriminant")->required();
    c_weil->add_flag("--check", "run the relation checks (default behaviour)");
    add_json_opt(c_weil);

    auto* c_weyl = app.add_subcommand("weyl", "Weyl vector of the pole-1 lift");
    c_weyl->add_option("--disc", N, "level (8, 12 or 21)")->required();
    c_weyl->add_option("--prec", P, "coefficient precision");
    add_json_opt(c_weyl);

    auto* c_bor = app.add_subcommand("borcherds", "product expansion of the lift");
    c_bor->add_option("--disc", N, "level (8, 12 or 21)")->required();
    c_bor->add_option("--m", m, "pole order (must be 1)");
    c_bor->add_option("--grade-bound", grade_bound, "expansion bound");
    c_bor->add_option("--prec", P, "coefficient precision");
    add_json_opt(c_bor);

    auto* c_mult = app.add_subcommand("multtable", "imaginary-root multiplicity table");
    c_mult->add_option("--a", a, "Cartan matrix entry (>= 3)")->required();
    c_mult->add_option("--grade-bound", grade_bound, "enumeration bound");
    c_mult->add_option("--prec", P, "coefficient precision");
    add_json_opt(c_mult);

    auto* c_asy = app.add_subcommand("asympt", "circle-method main terms vs exact coefficients");
    c_asy->add_option("--disc", N, "level")->required();
    c_asy->add_option("--m", m, "pole order (1 or N)")->required();
    c_asy->add_option("--from", from, "first n");
    c_asy->add_option("--to", to, "last n");
    c_asy->add_option("--prec", P, "coefficient precision");
    c_asy->add_flag("--csv", csv, "emit CSV instead of JSON");
    add_json_opt(c_asy);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    std::string cmd = app.get_subcommands().front()->get_name();
    try {
        threads_knob();  // validated even though the kernels are single-process
        Rat B;
        {
            // grade bounds arrive as decimals; snap to an exact rational
            long num = (long)std::llround(grade_bound * 4);
            require(num > 0 && std::abs(grade_bound * 4 - (double)num) < 1e-9,
                    "grade bound must be a multiple of 1/4");
            B = make_rat(num, 4);
        }
        json out;
        if (cmd == "basis") out = cmd_basis(N, m, P);
        else if (cmd == "existence") out = cmd_existence(N, maxm);
        else if (cmd == "sturm") out = cmd_sturm(N, P);
        else if (cmd == "eisenstein") out = cmd_eisenstein(N, P);
        else if (cmd == "dim") out = cmd_dim(N, k);
        else if (cmd == "weilrep") out = cmd_weilrep(N);
        else if (cmd == "weyl") out = cmd_weyl(N, P);
        else if (cmd == "borcherds") out = cmd_borcherds(N, m, B, P);
        else if (cmd == "multtable") out = cmd_multtable(a, B, P);
        else if (cmd == "asympt") out = cmd_asympt(N, m, from, to, P, csv);
        if (!out.is_null()) emit(out, out_path);
        return 0;
    } catch (const ConfigError& e) {
        std::cout << json{{"error", e.what()}, {"command", cmd}, {"kind", "config"}}.dump(2) << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cout << json{{"error", e.what()}, {"command", cmd}, {"kind", "module"}}.dump(2) << "\n";
        return 1;
    }
}
