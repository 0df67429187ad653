// Command-line front door: enumerate surface points, build codes and
// parity matrices, run the min-sum decoder, and reproduce the random
// surface tables.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "surfcode/codes.hpp"
#include "surfcode/experiments.hpp"
#include "surfcode/io.hpp"
#include "surfcode/laurent.hpp"
#include "surfcode/ldpc.hpp"
#include "surfcode/parity.hpp"

using json = nlohmann::json;
using namespace surfcode;

namespace {

struct CommonOpts {
    std::string field;
    std::string surface;
    int m = 1;
    std::string order_file;
    std::string out;
};

std::string surface_text(const std::string& arg) {
    if (!arg.empty() && arg[0] == '@') return io::read_file(arg.substr(1));
    return arg;
}

std::vector<projgeo::Point> load_points(const projgeo::Surface& s, const std::string& order_file) {
    auto pts = projgeo::surface_points(s).affine;
    if (order_file.empty()) return pts;
    return io::apply_point_order(
        pts, io::parse_point_list(io::read_file(order_file), s.field()));
}

json field_json(const gf::Field& f) { return json{{"p", f.characteristic()}, {"e", f.degree()}}; }

const gf::Field& field_from_json(const json& j) {
    if (j.is_string()) return io::parse_field(j.get<std::string>());
    return gf::Field::get(j.at("p").get<int>(), j.at("e").get<int>());
}

void emit(const json& j, const std::string& out) {
    if (out.empty()) return;
    std::ofstream f(out);
    f << j.dump(2) << "\n";
    if (!f) throw std::runtime_error("cannot write " + out);
}

json matrix_json(const linalg::Matrix& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(row);
    }
    return rows;
}

int cmd_points(const CommonOpts& o) {
    const gf::Field& f = io::parse_field(o.field);
    auto s = io::parse_surface(surface_text(o.surface), f);
    auto pts = load_points(s, o.order_file);
    auto infinity = projgeo::surface_points(s).at_infinity;
    json j{{"field", field_json(f)},
           {"surface", s.str()},
           {"affine", json::array()},
           {"at_infinity", json::array()}};
    std::cout << "# affine points (" << pts.size() << ")\n";
    for (const auto& p : pts) {
        std::cout << p.str() << "\n";
        json c = json::array();
        for (uint8_t v : p.coords()) c.push_back(v);
        j["affine"].push_back(c);
    }
    std::cout << "# points at infinity (" << infinity.size() << ")\n";
    for (const auto& p : infinity) {
        std::cout << "# " << p.str() << "\n";
        json c = json::array();
        for (uint8_t v : p.coords()) c.push_back(v);
        j["at_infinity"].push_back(c);
    }
    emit(j, o.out);
    return 0;
}

int cmd_code(const CommonOpts& o, long distance_budget) {
    const gf::Field& f = io::parse_field(o.field);
    auto s = io::parse_surface(surface_text(o.surface), f);
    auto pts = load_points(s, o.order_file);
    auto code = codes::functional_code(s, o.m, pts);
    json j{{"field", field_json(f)},
           {"surface", s.str()},
           {"m", o.m},
           {"n", code.n},
           {"k", code.k},
           {"provenance", code.provenance},
           {"generator", matrix_json(code.generator)}};
    std::cout << "[n, k] = [" << code.n << ", " << code.k << "]\n";
    if (distance_budget > 0) {
        const long d = codes::min_distance_bruteforce(code, distance_budget);
        j["min_distance"] = d;
        std::cout << "min distance = " << d << "\n";
    }
    emit(j, o.out);
    return 0;
}

int cmd_parity(const CommonOpts& o, bool dense) {
    const gf::Field& f = io::parse_field(o.field);
    auto s = io::parse_surface(surface_text(o.surface), f);
    auto pts = load_points(s, o.order_file);
    auto pm = parity::build_parity_matrix(s, o.m, pts);
    auto t = parity::is_positive_test(s, o.m, pts);
    json j{{"field", field_json(f)}, {"surface", s.str()}, {"m", o.m},
           {"n", pm.n},              {"rank", t.rank},     {"k", t.k},
           {"positive", t.positive}, {"gap", t.gap},       {"rows", json::array()}};
    for (const auto& row : pm.rows) {
        json entries = json::array();
        for (auto [idx, c] : row.entries) entries.push_back(json::array({idx, c}));
        json line = json::array();
        for (const auto& lr : row.line.rows()) {
            json r = json::array();
            for (uint8_t v : lr) r.push_back(v);
            line.push_back(r);
        }
        j["rows"].push_back(
            json{{"entries", entries},
                 {"line", line},
                 {"direction", {row.direction[0], row.direction[1], row.direction[2]}}});
    }
    j["H"] = matrix_json(parity::to_matrix(pm));
    std::cout << pm.rows.size() << "x" << pm.n << " parity matrix, rank " << t.rank
              << (t.positive ? " = " : " < ") << "n-k = " << (t.n - t.k) << "\n";
    if (dense) {
        for (const auto& row : j["H"]) {
            for (const auto& v : row) std::cout << v.get<int>() << " ";
            std::cout << "\n";
        }
    }
    emit(j, o.out);
    return 0;
}

int cmd_decode(const std::string& input, const std::string& y_arg, int iters,
               const std::string& tie, const std::string& trace_out, const std::string& out) {
    const json j = json::parse(io::read_file(input));
    const gf::Field& f = field_from_json(j.at("field"));
    const auto& hj = j.at("H");
    linalg::Matrix h(f, static_cast<int>(hj.size()), static_cast<int>(hj.at(0).size()));
    for (int r = 0; r < h.rows(); ++r)
        for (int c = 0; c < h.cols(); ++c) h(r, c) = hj.at(r).at(c).get<uint8_t>();
    std::vector<uint8_t> y;
    if (!y_arg.empty()) {
        std::string tok;
        for (char c : y_arg + ",") {
            if (c == ',' || c == ' ') {
                if (!tok.empty()) y.push_back(f.parse(tok));
                tok.clear();
            } else {
                tok += c;
            }
        }
    } else if (j.contains("y")) {
        for (const auto& v : j.at("y")) y.push_back(v.get<uint8_t>());
    } else {
        throw std::runtime_error("no received word: pass --y or put \"y\" in the input file");
    }
    if (j.contains("iters") && iters == 0) iters = j.at("iters").get<int>();
    if (iters <= 0) iters = 10;

    ldpc::TannerGraph g = ldpc::TannerGraph::from_matrix(h);
    ldpc::Trace trace;
    const auto policy =
        tie == "keep" ? ldpc::TiePolicy::KeepReceived : ldpc::TiePolicy::Undecided;
    ldpc::DecodeResult res = ldpc::decode(g, y, iters, policy, &trace);

    json dec = json::array();
    std::cout << "decoded: (";
    for (int i = 0; i < g.nbits(); ++i) {
        dec.push_back(res.decided[i]);
        if (i) std::cout << ",";
        if (res.decided[i] < 0)
            std::cout << "?";
        else
            std::cout << f.to_string(static_cast<uint8_t>(res.decided[i]));
    }
    std::cout << ")\n";
    json jr{{"field", field_json(f)}, {"decided", dec}, {"iterations", res.iterations}};
    json glob = json::array();
    for (const auto& t : res.global) glob.push_back(t);
    jr["global"] = glob;
    emit(jr, out);

    if (!trace_out.empty()) {
        json tj = json::array();
        for (size_t it = 0; it < trace.states.size(); ++it) {
            json step{{"iteration", it + 1}, {"mu", json::array()}, {"nu", json::array()}};
            for (int e = 0; e < g.nedges(); ++e) {
                const auto& edge = g.edges()[e];
                step["mu"].push_back(json{
                    {"bit", edge.bit}, {"check", edge.check}, {"table", trace.states[it].mu[e]}});
                step["nu"].push_back(json{
                    {"bit", edge.bit}, {"check", edge.check}, {"table", trace.states[it].nu[e]}});
            }
            json g2 = json::array();
            for (const auto& t : trace.decisions[it].global) g2.push_back(t);
            step["global"] = g2;
            tj.push_back(step);
        }
        emit(tj, trace_out);
    }
    return 0;
}

int cmd_table(const std::string& field, int degree, int m, int trials, uint64_t seed,
              const std::string& smooth_mode, int threads, bool verbose, const std::string& out) {
    const gf::Field& f = io::parse_field(field);
    const auto mode = smooth_mode == "rational" ? projgeo::SmoothMode::RationalOnly
                                                : projgeo::SmoothMode::Full;
    std::vector<experiments::TrialRecord> records;
    auto t = experiments::run_table(f, degree, m, trials, seed, mode, threads,
                                    verbose ? &records : nullptr);
    if (verbose)
        for (const auto& r : records)
            std::cout << json{{"seed", r.seed},
                              {"n", r.n},
                              {"k", r.k},
                              {"rank", r.rank},
                              {"positive", r.positive},
                              {"gap", r.gap},
                              {"rejected_singular", r.rejected_singular},
                              {"rejected_no_points", r.rejected_no_points}}
                             .dump()
                      << "\n";
    std::cout << experiments::csv_header() << "\n" << experiments::to_csv(t) << "\n";
    if (!out.empty()) {
        std::ofstream fo(out, std::ios::app);
        fo << experiments::to_csv(t) << "\n";
        if (!fo) throw std::runtime_error("cannot write " + out);
    }
    return 0;
}

int cmd_residue_demo() {
    using namespace surfcode::laurent;
    QRing R;
    // dx/x ^ dy/y at the origin, expanded three ways.
    Form2<QRing> w{parse_series(R, "u^-1*v^-1"), "x", "y"};
    std::cout << "form dx/x ^ dy/y, residues at the origin along three curves:\n";
    std::cout << "  along y = 0 (pair x, y):        " << two_residue(w).get_str() << "\n";
    std::cout << "  along x = 0 (pair y, x):        " << two_residue(w.flipped()).get_str()
              << "\n";
    Series<QRing> diag = parse_series(R, "u^-1") * parse_series(R, "u + v").inverse();
    Form2<QRing> wd{diag, "x", "v"};
    std::cout << "  along y = x (v = y - x):        " << two_residue(wd).get_str() << "\n";

    // x dx ^ dy/y^2: the naive dy/y coefficient is 0, but the substitution
    // x = u + y makes a dy/y term with coefficient 1 appear.
    Form2<QRing> w2{parse_series(R, "u*v^-2"), "x", "y"};
    auto s0 = one_residue(w2);
    bool zero = true;
    for (const auto& c : s0.coeffs) zero = zero && c == 0;
    std::cout << "form x dx ^ dy/y^2:\n";
    std::cout << "  dy/y slice in coordinates (x, y): " << (zero ? "0" : "nonzero") << "\n";
    ChangeOfVars<QRing> cv{parse_series(R, "u + v"), parse_series(R, "v")};
    auto w3 = apply_change_of_vars(w2, cv);
    auto s1 = one_residue(w3);
    std::cout << "  dy/y slice after x = u + y:       " << s1.coeffs.at(0 - s1.i0).get_str()
              << " (du)\n";
    std::cout << "  2-residue stays " << two_residue(w3).get_str() << " either way\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"algebraic-surface code toolkit"};
    app.require_subcommand(1);

    CommonOpts co;
    long distance_budget = 0;
    bool dense = false;

    auto add_common = [&](CLI::App* c, bool with_m) {
        c->add_option("--field", co.field, "base field, p^e or q")->required();
        c->add_option("--surface", co.surface, "surface equation or @file")->required();
        if (with_m) c->add_option("--m", co.m, "degree bound of the evaluated forms");
        c->add_option("--order-file", co.order_file, "file fixing the affine point order");
        c->add_option("--out", co.out, "write machine-readable JSON here");
    };

    CLI::App* points = app.add_subcommand("points", "list the rational points of a surface");
    add_common(points, false);

    CLI::App* code = app.add_subcommand("code", "build the functional code");
    add_common(code, true);
    code->add_option("--distance-budget", distance_budget,
                     "brute-force the minimum distance if q^k is within this budget");

    CLI::App* par = app.add_subcommand("parity", "build the residue parity matrix");
    add_common(par, true);
    par->add_flag("--dense", dense, "also print the dense matrix");

    std::string input, y_arg, tie = "undecided", trace_out, out2;
    int iters = 0;
    CLI::App* dec = app.add_subcommand("decode", "min-sum decode a received word");
    dec->add_option("--input", input, "JSON file with field, H and optionally y/iters")
        ->required();
    dec->add_option("--y", y_arg, "received word, comma-separated symbols");
    dec->add_option("--iters", iters, "number of iterations (default 10 or the file's value)");
    dec->add_option("--tie", tie, "tie policy: undecided|keep")
        ->check(CLI::IsMember({"undecided", "keep"}));
    dec->add_option("--trace", trace_out, "write the per-iteration message trace here");
    dec->add_option("--out", out2, "write the decode result here");

    std::string tfield, smooth_mode = "full", tout;
    int degree = 3, tm = 1, trials = 100, threads = 0;
    uint64_t seed = 1;
    bool verbose = false;
    CLI::App* table = app.add_subcommand("table", "random smooth-surface rank statistics");
    table->add_option("--field", tfield)->required();
    table->add_option("--degree", degree);
    table->add_option("--m", tm);
    table->add_option("--trials", trials);
    table->add_option("--seed", seed);
    table->add_option("--smooth-mode", smooth_mode)->check(CLI::IsMember({"full", "rational"}));
    table->add_option("--threads", threads);
    table->add_flag("--verbose", verbose, "stream per-trial JSON records");
    table->add_option("--out", tout, "append the CSV row to this file");

    app.add_subcommand("residue-demo", "print the classic residue computations");

    CLI11_PARSE(app, argc, argv);

    try {
        if (points->parsed()) return cmd_points(co);
        if (code->parsed()) return cmd_code(co, distance_budget);
        if (par->parsed()) return cmd_parity(co, dense);
        if (dec->parsed()) return cmd_decode(input, y_arg, iters, tie, trace_out, out2);
        if (table->parsed())
            return cmd_table(tfield, degree, tm, trials, seed, smooth_mode, threads, verbose,
                             tout);
        return cmd_residue_demo();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
