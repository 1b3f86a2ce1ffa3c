// fqlat: exact arithmetic for primitive partial lattices over F_q[Y] at the
// place at infinity -- constants, enumeration, block-LU, shapes, orthogonals,
// and equidistribution experiments.

#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include <CLI11.hpp>

#include "fqlat/harness.hpp"

using namespace fqlat;

namespace {

// flat key=value configuration file; '#' starts a comment, blank lines
// ignored; explicit command-line flags take precedence
std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot read config file " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(f, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            size_t a = s.find_first_not_of(" \t\r");
            size_t b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = val;
    }
    return kv;
}

IdealR parse_ideal(long q, const std::string& s) {
    Fq F = Fq::make(q);
    if (s.empty() || s == "unit" || s == "R") return IdealR::unit(F);
    return IdealR(parse_poly(F, s));
}

int cmd_constants(long q, int D, int d, const std::string& ideal) {
    ConstantsBundle b = constants_bundle(q, d, D - d, parse_ideal(q, ideal));
    std::cout << bundle_json(b).dump(1) << "\n";
    return 0;
}

int cmd_enumerate(long q, int D, int d, int exp, const std::string& ideal,
                  const std::string& shard, long long budget, bool dualize) {
    EnumSpec spec(q, D, d, exp, parse_ideal(q, ideal));
    spec.dualize = dualize;
    int shard_idx = 0, shards = 1;
    if (!shard.empty()) {
        auto slash = shard.find('/');
        if (slash == std::string::npos) throw std::invalid_argument("--shard expects k/n");
        shard_idx = std::stoi(shard.substr(0, slash));
        shards = std::stoi(shard.substr(slash + 1));
        if (shards < 1 || shard_idx < 0 || shard_idx >= shards)
            throw std::invalid_argument("--shard expects 0 <= k < n");
    }
    auto emit = [&](const PartialLattice& L) {
        ordered_json j;
        j["q"] = q;
        j["D"] = L.D();
        j["d"] = L.d();
        ordered_json basis = ordered_json::array();
        for (int i = 0; i < L.D(); ++i) {
            ordered_json row = ordered_json::array();
            for (int c = 0; c < L.d(); ++c) {
                ordered_json coeffs = ordered_json::array();
                const Poly& p = L.basis().at(i, c);
                for (int k = 0; k <= std::max(p.deg(), 0); ++k) coeffs.push_back(p.coeff(k).v);
                row.push_back(coeffs);
            }
            basis.push_back(row);
        }
        j["basis"] = basis;
        j["covol_exp"] = L.covol_exp();
        std::cout << j.dump() << "\n";
    };
    if (spec.dualize) {
        for (const auto& L : enum_by_duality(spec, budget)) emit(L);
    } else {
        enum_primitive(spec, emit, budget, shard_idx, shards);
    }
    return 0;
}

ordered_json matK_json(const MatK& m) {
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j < m.cols(); ++j) {
            ordered_json e;
            ordered_json num = ordered_json::array(), den = ordered_json::array();
            const RatFun& f = m.at(i, j);
            for (int k = 0; k <= std::max(f.num().deg(), 0); ++k) num.push_back(f.num().coeff(k).v);
            for (int k = 0; k <= std::max(f.den().deg(), 0); ++k) den.push_back(f.den().coeff(k).v);
            e["num"] = num;
            e["den"] = den;
            row.push_back(e);
        }
        rows.push_back(row);
    }
    return rows;
}

ordered_json blocklu_json(const BlockLU& lu) {
    ordered_json j;
    j["d"] = lu.d;
    j["n"] = lu.n;
    j["t"] = lu.t;
    j["u_minus_block"] = matK_json(lu.lower);
    j["g_bar"] = matK_json(lu.g_bar);
    j["g_under"] = matK_json(lu.g_under);
    j["u_plus_block"] = matK_json(lu.upper);
    return j;
}

ordered_json fulllat_json(const FullLat& L) {
    ordered_json j;
    ordered_json den = ordered_json::array();
    for (int k = 0; k <= std::max(L.den().deg(), 0); ++k) den.push_back(L.den().coeff(k).v);
    j["den"] = den;
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < L.k(); ++i) {
        ordered_json row = ordered_json::array();
        for (int c = 0; c < L.k(); ++c) {
            ordered_json coeffs = ordered_json::array();
            const Poly& p = L.num().at(i, c);
            for (int k = 0; k <= std::max(p.deg(), 0); ++k) coeffs.push_back(p.coeff(k).v);
            row.push_back(coeffs);
        }
        rows.push_back(row);
    }
    j["basis"] = rows;
    j["covol_exp"] = L.covol_exp();
    return j;
}

int cmd_lu(const std::string& matrix, const std::string& basis, int d) {
    if (!matrix.empty()) {
        auto [F, m] = parse_qualified_matR(matrix);
        std::cout << blocklu_json(block_lu(to_matK(m), d)).dump() << "\n";
        return 0;
    }
    // lattice mode: Omega representative, its block-LU data, and the
    // correlated pair record
    auto [F, m] = parse_qualified_matR(basis);
    PartialLattice L(m.rows(), d, m);
    OmegaRep om = to_omega_rep(L);
    CorrelatedPair pair = correlated_pair(L);
    ordered_json j;
    j["omega_rep"] = matR_str(om.g);
    j["block_lu"] = blocklu_json(om.lu);
    ordered_json pj;
    pj["lat_d"] = fulllat_json(pair.lat_d);
    pj["lat_n"] = fulllat_json(pair.lat_n);
    ordered_json det;
    det["leading_exponent"] = pair.det_jet.is_zero() ? 0 : pair.det_jet.leading_exponent();
    det["precision"] = pair.det_jet.precision();
    ordered_json coeffs = ordered_json::array();
    for (const auto& c : pair.det_jet.coeffs()) coeffs.push_back(c.v);
    det["coeffs"] = coeffs;
    pj["det_jet"] = det;
    j["correlated_pair"] = pj;
    std::cout << j.dump() << "\n";
    return 0;
}

PartialLattice lattice_from_arg(const std::string& basis, int d) {
    auto [F, m] = parse_qualified_matR(basis);
    return PartialLattice(m.rows(), d, m);
}

int cmd_shape(const std::string& basis, int d) {
    std::cout << shape_of_partial(lattice_from_arg(basis, d)).str() << "\n";
    return 0;
}

int cmd_orth(const std::string& basis, int d) {
    PartialLattice O = orthogonal_lattice(lattice_from_arg(basis, d));
    long q = O.field().q();
    ordered_json j;
    j["q"] = q;
    j["D"] = O.D();
    j["d"] = O.d();
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < O.D(); ++i) {
        ordered_json row = ordered_json::array();
        for (int c = 0; c < O.d(); ++c) {
            ordered_json coeffs = ordered_json::array();
            const Poly& p = O.basis().at(i, c);
            for (int k = 0; k <= std::max(p.deg(), 0); ++k) coeffs.push_back(p.coeff(k).v);
            row.push_back(coeffs);
        }
        rows.push_back(row);
    }
    j["basis"] = rows;
    j["covol_exp"] = O.covol_exp();
    std::cout << j.dump() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact lattice constructions and equidistribution experiments over F_q(Y)"};
    app.require_subcommand(1);

    long q = 2;
    int D = 2, d = 1, exp = 1, i_max = 1, grass_precision = 2, jet_precision = 2, workers = 1;
    long long budget = 10000000;
    std::string ideal, shard, matrix, basis, out = "report", format = "jsonl", kind;
    bool dualize = false;

    std::string config_path;
    auto add_common = [&](CLI::App* c) {
        c->add_option("--config", config_path,
                      "flat key=value configuration file mirroring the flags");
        c->add_option("--q", q, "field order (prime power)");
        c->add_option("--D", D, "ambient dimension");
        c->add_option("--d", d, "lattice rank");
        c->add_option("--ideal", ideal, "monic generator, e.g. [0,1] for (Y); empty for R");
    };

    CLI::App* constants = app.add_subcommand("constants", "print the exact constants bundle");
    add_common(constants);

    CLI::App* enumerate = app.add_subcommand("enumerate", "stream primitive lattices as JSONL");
    add_common(enumerate);
    enumerate->add_option("--exp", exp, "normalized covolume exponent");
    enumerate->add_option("--shard", shard, "k/n: emit only shard k of n");
    enumerate->add_option("--budget", budget, "refuse enumerations above this node count");
    enumerate->add_option("--format", format, "output format (jsonl)");
    enumerate->add_flag("--dualize", dualize, "enumerate through the orthogonal bijection (d = D-1)");

    CLI::App* lu = app.add_subcommand("lu", "refined block-LU decomposition of a matrix over K");
    lu->add_option("--matrix", matrix, "matrix literal, e.g. \"q=2; [[[0,1],[1]],[[1],[]]]\"");
    lu->add_option("--basis", basis,
                   "lattice basis literal (D x d): emit the Omega representative, its "
                   "block-LU data and the correlated pair");
    lu->add_option("--d", d, "size of the upper-left block / lattice rank");

    CLI::App* shape = app.add_subcommand("shape", "shape class of a primitive partial lattice");
    shape->add_option("--basis", basis, "basis matrix literal (D x d)")->required();
    shape->add_option("--d", d, "lattice rank");

    CLI::App* orth = app.add_subcommand("orth", "orthogonal lattice in the dual coordinates");
    orth->add_option("--basis", basis, "basis matrix literal (D x d)")->required();
    orth->add_option("--d", d, "lattice rank");

    CLI::App* experiment = app.add_subcommand("experiment", "equidistribution experiments");
    experiment->add_option("kind", kind, "counting | triple | detclass")->required();
    add_common(experiment);
    experiment->add_option("--i-max", i_max, "largest covolume index i");
    experiment->add_option("--grass-precision", grass_precision, "cell precision j");
    experiment->add_option("--jet-precision", jet_precision, "determinant jet precision");
    experiment->add_option("--budget", budget, "node budget per enumeration");
    experiment->add_option("--workers", workers, "parallel enumeration shards");
    experiment->add_option("--out", out, "output prefix for <out>.csv and <out>.json");

    CLI11_PARSE(app, argc, argv);

    auto apply_config = [&](CLI::App* sub) {
        if (config_path.empty()) return;
        auto kv = read_config(config_path);
        auto given = [&](const std::string& key) {
            auto* opt = sub->get_option_no_throw("--" + key);
            return opt && opt->count() > 0;
        };
        auto set = [&](const char* key, auto& var) {
            auto it = kv.find(key);
            if (it == kv.end() || given(key)) return;
            using V = std::decay_t<decltype(var)>;
            if constexpr (std::is_same_v<V, std::string>) var = it->second;
            else if constexpr (std::is_same_v<V, bool>) var = it->second == "1" || it->second == "true";
            else var = static_cast<V>(std::stoll(it->second));
            kv.erase(it);
        };
        set("q", q);
        set("D", D);
        set("d", d);
        set("ideal", ideal);
        set("exp", exp);
        set("shard", shard);
        set("budget", budget);
        set("format", format);
        set("i-max", i_max);
        set("grass-precision", grass_precision);
        set("jet-precision", jet_precision);
        set("workers", workers);
        set("out", out);
        set("dualize", dualize);
        // leftovers are either flags the subcommand ignores or typos; only
        // reject keys no subcommand knows
        static const std::set<std::string> known = {
            "q", "D", "d", "ideal", "exp", "shard", "budget", "format", "i-max",
            "grass-precision", "jet-precision", "workers", "out", "dualize"};
        for (const auto& [k, v] : kv)
            if (!known.count(k)) throw std::invalid_argument("unknown config key: " + k);
    };

    try {
        for (CLI::App* sub : {constants, enumerate, lu, shape, orth, experiment})
            if (app.got_subcommand(sub)) apply_config(sub);
        if (app.got_subcommand(constants)) return cmd_constants(q, D, d, ideal);
        if (app.got_subcommand(enumerate)) {
            if (format != "jsonl") throw std::invalid_argument("unsupported --format");
            return cmd_enumerate(q, D, d, exp, ideal, shard, budget, dualize);
        }
        if (app.got_subcommand(lu)) {
            if (matrix.empty() && basis.empty())
                throw std::invalid_argument("lu needs --matrix or --basis");
            return cmd_lu(matrix, basis, d);
        }
        if (app.got_subcommand(shape)) return cmd_shape(basis, d);
        if (app.got_subcommand(orth)) return cmd_orth(basis, d);
        if (app.got_subcommand(experiment)) {
            ExperimentConfig cfg(q, D, d, i_max, parse_ideal(q, ideal));
            cfg.grass_precision = grass_precision;
            cfg.jet_precision = jet_precision;
            cfg.budget = budget;
            cfg.workers = workers;
            ExperimentReport rep;
            if (kind == "counting") rep = run_counting(cfg);
            else if (kind == "triple") rep = run_triple(cfg);
            else if (kind == "detclass") rep = run_detclass(cfg);
            else throw std::invalid_argument("unknown experiment kind: " + kind);
            emit_report(rep, out);
            std::cout << report_json(rep);
            if (rep.json["budget_exceeded"] == true) return 2;
            return 0;
        }
    } catch (const BudgetExceeded& e) {
        std::cerr << "refused: " << e.what() << " (" << e.nodes.str() << " nodes)\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
