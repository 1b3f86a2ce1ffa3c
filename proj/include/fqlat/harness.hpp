#pragma once

#include <cmath>
#include <fstream>
#include <map>
#include <thread>

#include <json.hpp>

#include "enumerate.hpp"
#include "grassmann.hpp"
#include "measures.hpp"
#include "shape.hpp"

namespace fqlat {

using ordered_json = nlohmann::ordered_json;

struct ExperimentConfig {
    long q = 2;
    int D = 2;
    int d = 1;
    int i_max = 1;
    int grass_precision = 2;
    int jet_precision = 2;
    long long budget = 10000000;
    int workers = 1;
    IdealR ideal;

    ExperimentConfig(long q_, int D_, int d_, int imax, IdealR I)
        : q(q_), D(D_), d(d_), i_max(imax), ideal(std::move(I)) {}
    static ExperimentConfig make(long q, int D, int d, int imax) {
        return ExperimentConfig(q, D, d, imax, IdealR::unit(Fq::make(q)));
    }
    int n() const { return D - d; }
    int ell() const { return lcm_int(d, D - d); }
};

// Frozen CSV row: i, key, count, predicted_mass, empirical_mass, tv
struct CsvRow {
    long i;
    std::string key, count, predicted, empirical, tv;
};

struct ExperimentReport {
    std::string kind;
    ordered_json json;
    std::vector<CsvRow> csv;
};

namespace detail {

inline std::string unit_factor_name(const Rational& ratio, long q, int d, int n) {
    struct Cand { const char* name; Rational v; };
    std::vector<Cand> cands = {
        {"1", Rational(1)},
        {"q-1", Rational(q - 1)},
        {"1/(q-1)", Rational(1) / (q - 1)},
        {"q^d-1", q_pow(q, d) - 1},
        {"1/(q^d-1)", Rational(1) / (q_pow(q, d) - 1)},
        {"q^n-1", q_pow(q, n) - 1},
        {"1/(q^n-1)", Rational(1) / (q_pow(q, n) - 1)},
    };
    for (const auto& c : cands)
        if (ratio == c.v) return c.name;
    return "none";
}

template <class Acc>
Acc map_reduce(const EnumSpec& spec, long long budget, int workers,
               const std::function<void(const PartialLattice&, Acc&)>& visit) {
    BigInt est = enum_node_estimate(spec);
    if (budget >= 0 && est > budget) throw BudgetExceeded(est);
    if (workers <= 1) {
        Acc a;
        enum_primitive(spec, [&](const PartialLattice& L) { visit(L, a); }, -1);
        return a;
    }
    std::vector<Acc> accs(workers);
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w)
        threads.emplace_back([&, w] {
            enum_primitive(spec, [&](const PartialLattice& L) { visit(L, accs[w]); }, -1, w, workers);
        });
    for (auto& t : threads) t.join();
    Acc total;
    for (auto& a : accs) total.merge(a);
    return total;
}

// least-squares slope of log_q(values) against x, for the error-exponent estimate
inline double regression_slope(long q, const std::vector<std::pair<long, Rational>>& pts) {
    std::vector<std::pair<double, double>> xy;
    for (const auto& [x, v] : pts) {
        if (v <= 0) continue;
        double lv = (log(static_cast<double>(numerator(v).convert_to<double>())) -
                     log(static_cast<double>(denominator(v).convert_to<double>()))) /
                    log(static_cast<double>(q));
        xy.emplace_back(static_cast<double>(x), lv);
    }
    if (xy.size() < 2) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : xy) { sx += x; sy += y; sxx += x * x; sxy += x * y; }
    double n = static_cast<double>(xy.size());
    double denom = n * sxx - sx * sx;
    return denom == 0 ? 0.0 : (n * sxy - sx * sy) / denom;
}

// normalized vertex masses of Sh^1_k restricted to classes with a_1 <= A,
// plus the exactly-known (k <= 2) or certified-bounded tail mass
struct ShapeMassTable {
    std::map<std::string, Rational> p;  // class string -> normalized mass
    Rational tail;                      // normalized mass above the bound (upper bound for k >= 3)
    bool tail_exact = true;
};

inline ShapeMassTable normalized_shape_masses(int k, long q, int A) {
    ShapeMassTable t;
    Rational total;
    if (k <= 2) {
        total = shape_mass_total_vertex(k, q);
        t.tail = total - shape_mass_partial_sum(k, q, A);
    } else {
        Rational partial = shape_mass_partial_sum(k, q, A);
        Rational tailb = shape_mass_tail_bound(k, q, A);
        total = partial + tailb;
        t.tail = tailb / total;
        t.tail_exact = false;
    }
    for (const auto& c : shape_classes_up_to(k, A))
        t.p[c.str()] = Rational(1) / Rational(stabilizer_order(c, q)) / total;
    if (k <= 2) t.tail /= total;
    return t;
}

inline Rational tv_against(const std::map<std::string, long>& counts, long long N,
                           const ShapeMassTable& masses) {
    Rational tv = 0;
    for (const auto& [key, mass] : masses.p) {
        auto it = counts.find(key);
        Rational emp = it == counts.end() ? Rational(0) : Rational(it->second, N);
        tv += emp >= mass ? emp - mass : mass - emp;
    }
    for (const auto& [key, cnt] : counts)
        if (!masses.p.count(key)) tv += Rational(cnt, N);  // beyond the table bound
    tv += masses.tail;
    return tv / 2;
}

inline Rational tv_to_uniform(const std::map<std::string, long>& counts, long long N,
                              const Rational& unit_mass, const BigInt& total_cells) {
    Rational tv = 0;
    BigInt seen = 0;
    for (const auto& [key, cnt] : counts) {
        Rational emp(cnt, N);
        tv += emp >= unit_mass ? emp - unit_mass : unit_mass - emp;
        seen += 1;
    }
    tv += Rational(total_cells - seen) * unit_mass;
    return tv / 2;
}

} // namespace detail

inline ordered_json bundle_json(const ConstantsBundle& b) {
    ordered_json j;
    j["q"] = b.q;
    j["d"] = b.d;
    j["n"] = b.n;
    j["D"] = b.D;
    j["ideal"] = poly_str(b.ideal_gen);
    for (const auto& [s, v] : b.zeta_values) j["zeta_K(" + std::to_string(s) + ")"] = rat_str(v);
    j["c_1"] = rat_str(b.c1_value);
    j["index_gamma_I"] = rat_str(b.index_gamma);
    j["c_I"] = rat_str(b.cI_value);
    j["c_prime"] = rat_str(b.c_prime_value);
    j["mass_lat1_d"] = rat_str(b.mass_lat_d);
    j["mass_lat1_n"] = rat_str(b.mass_lat_n);
    j["mass_lat1_D"] = rat_str(b.mass_lat_D);
    j["mass_lat1_pair"] = rat_str(b.mass_pair);
    j["mass_sh1_d"] = rat_str(b.mass_sh_d);
    j["mass_sh1_n"] = rat_str(b.mass_sh_n);
    j["mass_sl_mod_sl_d"] = rat_str(b.mass_slsl_d);
    j["mass_sl_mod_sl_n"] = rat_str(b.mass_slsl_n);
    j["reduction_index_N1"] = rat_str(b.reduction_index_N1);
    j["reduction_index_N2"] = rat_str(b.reduction_index_N2);
    // vertex-mass totals (independent of the closed-form mass evaluations) and their
    // ratios to the formula values, reported side by side, never reconciled
    for (auto [name, k] : {std::pair<const char*, long>{"d", b.d}, {"n", b.n}}) {
        if (k > 2) continue;
        Rational vertex = shape_mass_total_vertex(static_cast<int>(k), b.q);
        Rational formula = k == b.d ? b.mass_sh_d : b.mass_sh_n;
        j[std::string("shape_mass_vertex_") + name] = rat_str(vertex);
        j[std::string("shape_mass_vertex_over_formula_") + name] = rat_str(vertex / formula);
    }
    return j;
}

// ---------------------------------------------------------------------------
// counting experiment: N_i and the flat subfamily against the closed-form constants

struct CountingAcc {
    long long total = 0, flat = 0;
    long long nonsharp_covol_mismatch = 0;  // evidence rows for the Plücker covolume outside G^sharp
    std::string mismatch_example;
    void merge(const CountingAcc& o) {
        total += o.total;
        flat += o.flat;
        nonsharp_covol_mismatch += o.nonsharp_covol_mismatch;
        // keep the lexicographically smallest example so shard merges are
        // order independent
        if (!o.mismatch_example.empty() &&
            (mismatch_example.empty() || o.mismatch_example < mismatch_example))
            mismatch_example = o.mismatch_example;
    }
};

inline ExperimentReport run_counting(const ExperimentConfig& cfg) {
    const int ell = cfg.ell(), D = cfg.D, d = cfg.d, n = cfg.n();
    ConstantsBundle bundle = constants_bundle(cfg.q, d, n, cfg.ideal);
    ExperimentReport rep;
    rep.kind = "counting";
    rep.json["experiment"] = "counting";
    rep.json["q"] = cfg.q;
    rep.json["D"] = D;
    rep.json["d"] = d;
    rep.json["ideal"] = poly_str(cfg.ideal.gen());
    rep.json["i_max"] = cfg.i_max;
    rep.json["constants"] = bundle_json(bundle);
    ordered_json table = ordered_json::array();
    bool partial = false;
    std::vector<std::pair<long, Rational>> fitted_seq;
    for (int i = 1; i <= cfg.i_max; ++i) {
        EnumSpec spec(cfg.q, D, d, ell * i, cfg.ideal);
        CountingAcc acc;
        try {
            acc = detail::map_reduce<CountingAcc>(
                spec, cfg.budget, cfg.workers, [&](const PartialLattice& L, CountingAcc& a) {
                    a.total++;
                    if (is_sharp(L)) {
                        a.flat++;
                    } else {
                        // Prop 3.4(ii) outside G^sharp: compare the Plücker covolume
                        // against lcm * t whenever the block-LU level exists
                        try {
                            BlockLU lu = block_lu(to_matK(complete_to_sl(L)), L.d());
                            if (lu.t * lcm_int(L.d(), L.n()) != L.covol_exp()) {
                                a.nonsharp_covol_mismatch++;
                                std::string ex = matR_str(L.basis());
                                if (a.mismatch_example.empty() || ex < a.mismatch_example)
                                    a.mismatch_example = ex;
                            }
                        } catch (const std::domain_error&) {
                            // no block-LU level outside U_G; nothing to record
                        }
                    }
                });
        } catch (const BudgetExceeded&) {
            partial = true;
            break;
        }
        Rational scale = q_pow(cfg.q, ell * D * i);
        Rational fitted = Rational(acc.total) / scale;
        Rational fitted_sharp = Rational(acc.flat) / scale;
        Rational pred_total =
            scale * bundle.mass_sh_d * bundle.mass_sh_n / (bundle.cI_value * (cfg.q - 1));
        Rational pred_sharp = scale * bundle.c1_value * bundle.mass_pair / bundle.cI_value;
        Rational ratio_total = pred_total == 0 ? Rational(0) : Rational(acc.total) / pred_total;
        Rational ratio_sharp = pred_sharp == 0 ? Rational(0) : Rational(acc.flat) / pred_sharp;
        Rational flat_fraction = acc.total == 0 ? Rational(0) : Rational(acc.flat, acc.total);
        fitted_seq.emplace_back(ell * D * i, fitted);

        ordered_json row;
        row["i"] = i;
        row["covol_exp"] = ell * i;
        row["N"] = acc.total;
        row["N_sharp"] = acc.flat;
        row["fitted_constant"] = rat_str(fitted);
        row["fitted_constant_sharp"] = rat_str(fitted_sharp);
        row["formula_predicted_N"] = rat_str(pred_total);
        row["formula_predicted_N_sharp"] = rat_str(pred_sharp);
        row["ratio_total_vs_mainshape"] = rat_str(ratio_total);
        row["ratio_total_unit_factor"] = detail::unit_factor_name(ratio_total, cfg.q, d, n);
        row["ratio_sharp_vs_mainsharp"] = rat_str(ratio_sharp);
        row["ratio_sharp_unit_factor"] = detail::unit_factor_name(ratio_sharp, cfg.q, d, n);
        row["flat_fraction"] = rat_str(flat_fraction);
        row["flat_fraction_equals_c1"] = flat_fraction == bundle.c1_value;
        row["nonsharp_covol_mismatches"] = acc.nonsharp_covol_mismatch;
        if (!acc.mismatch_example.empty()) row["covol_mismatch_example"] = acc.mismatch_example;
        table.push_back(row);

        rep.csv.push_back({i, "total", std::to_string(acc.total), rat_str(pred_total),
                           std::to_string(acc.total), "0"});
        rep.csv.push_back({i, "flat", std::to_string(acc.flat), rat_str(pred_sharp),
                           std::to_string(acc.flat), "0"});
    }
    rep.json["table"] = table;
    rep.json["budget_exceeded"] = partial;
    rep.json["fitted_slope_note"] =
        "least-squares slope of log_q fitted constants; the guaranteed error "
        "exponent is only known to lie in (0, 1/(2 D^2)]";
    rep.json["fitted_slope"] = detail::regression_slope(cfg.q, fitted_seq);
    return rep;
}

// ---------------------------------------------------------------------------
// triple experiment: joint (cell, sh, sh_perp, det-class) statistics

struct TripleAcc {
    long long n_all = 0, n_sharp = 0;
    std::map<std::string, long> cells, sh_all, shperp_all, sh_sharp, shperp_sharp, detcls;
    std::map<std::string, long> joint;
    void merge(const TripleAcc& o) {
        n_all += o.n_all;
        n_sharp += o.n_sharp;
        auto add = [](std::map<std::string, long>& a, const std::map<std::string, long>& b) {
            for (const auto& [k, v] : b) a[k] += v;
        };
        add(cells, o.cells);
        add(sh_all, o.sh_all);
        add(shperp_all, o.shperp_all);
        add(sh_sharp, o.sh_sharp);
        add(shperp_sharp, o.shperp_sharp);
        add(detcls, o.detcls);
        add(joint, o.joint);
    }
};

inline std::string det_class_key(const LaurentJet& jet, int precision) {
    std::string s = "[";
    for (int k = 1; k < precision; ++k) {
        if (k > 1) s += ",";
        s += std::to_string(jet.coeff(k).v);
    }
    return s + "]";
}

inline ExperimentReport run_triple(const ExperimentConfig& cfg) {
    const int ell = cfg.ell(), D = cfg.D, d = cfg.d, n = cfg.n();
    const int j = cfg.grass_precision, jp = cfg.jet_precision;
    ConstantsBundle bundle = constants_bundle(cfg.q, d, n, cfg.ideal);
    ExperimentReport rep;
    rep.kind = "triple";
    rep.json["experiment"] = "triple";
    rep.json["q"] = cfg.q;
    rep.json["D"] = D;
    rep.json["d"] = d;
    rep.json["ideal"] = poly_str(cfg.ideal.gen());
    rep.json["i_max"] = cfg.i_max;
    rep.json["grass_precision"] = j;
    rep.json["jet_precision"] = jp;
    rep.json["constants"] = bundle_json(bundle);
    ordered_json table = ordered_json::array();
    bool partial = false;
    std::vector<std::pair<long, Rational>> tv_seq_cells, tv_seq_shperp_all;

    for (int i = 1; i <= cfg.i_max; ++i) {
        EnumSpec spec(cfg.q, D, d, ell * i, cfg.ideal);
        TripleAcc acc;
        try {
            acc = detail::map_reduce<TripleAcc>(
                spec, cfg.budget, cfg.workers, [&](const PartialLattice& L, TripleAcc& a) {
                    a.n_all++;
                    ShapeClass sh = shape_of_partial(L);
                    ShapeClass shp = shape_of_partial(orthogonal_lattice(L));
                    a.sh_all[sh.str()]++;
                    a.shperp_all[shp.str()]++;
                    if (!is_sharp(L)) return;
                    a.n_sharp++;
                    GrassCell cell = grass_cell(L, j);
                    CorrelatedPair pair = correlated_pair(L, std::max(jp, 2));
                    std::string det = det_class_key(pair.det_jet, jp);
                    a.cells[cell.str()]++;
                    a.sh_sharp[sh.str()]++;
                    a.shperp_sharp[shp.str()]++;
                    a.detcls[det]++;
                    a.joint[cell.str() + "|" + sh.str() + "|" + shp.str() + "|" + det]++;
                });
        } catch (const BudgetExceeded&) {
            partial = true;
            break;
        }
        // predicted masses
        Rational cellmass = q_pow(cfg.q, -static_cast<long>(j) * d * n);
        BigInt ncells = numerator(q_pow(cfg.q, static_cast<long>(j) * d * n));
        int bound = ell * cfg.i_max + 6;
        auto shd_masses = detail::normalized_shape_masses(d, cfg.q, bound);
        auto shn_masses = detail::normalized_shape_masses(n, cfg.q, bound);
        Rational detmass = q_pow(cfg.q, -(jp - 1));
        BigInt ndet = numerator(q_pow(cfg.q, jp - 1));

        Rational tv_cells = detail::tv_to_uniform(acc.cells, acc.n_sharp, cellmass, ncells);
        Rational tv_sh_all = detail::tv_against(acc.sh_all, acc.n_all, shd_masses);
        Rational tv_shperp_all = detail::tv_against(acc.shperp_all, acc.n_all, shn_masses);
        Rational tv_sh_sharp = detail::tv_against(acc.sh_sharp, acc.n_sharp, shd_masses);
        Rational tv_shperp_sharp = detail::tv_against(acc.shperp_sharp, acc.n_sharp, shn_masses);
        Rational tv_det = detail::tv_to_uniform(acc.detcls, acc.n_sharp, detmass, ndet);
        tv_seq_cells.emplace_back(ell * D * i, tv_cells);
        tv_seq_shperp_all.emplace_back(ell * D * i, tv_shperp_all);

        // independence defect: joint vs product of the three sharp marginals
        Rational tv_indep = 0;
        for (const auto& [ck, cv] : acc.cells)
            for (const auto& [sk, sv] : acc.sh_sharp)
                for (const auto& [pk, pv] : acc.shperp_sharp)
                    for (const auto& [dk, dv] : acc.detcls) {
                        std::string key = ck + "|" + sk + "|" + pk + "|" + dk;
                        auto it = acc.joint.find(key);
                        Rational emp =
                            it == acc.joint.end() ? Rational(0) : Rational(it->second, acc.n_sharp);
                        Rational prod = Rational(cv, acc.n_sharp) * Rational(sv, acc.n_sharp) *
                                        Rational(pv, acc.n_sharp) * Rational(dv, acc.n_sharp);
                        tv_indep += emp >= prod ? emp - prod : prod - emp;
                    }
        tv_indep /= 2;

        ordered_json row;
        row["i"] = i;
        row["covol_exp"] = ell * i;
        row["N"] = acc.n_all;
        row["N_sharp"] = acc.n_sharp;
        row["tv_cells_vs_uniform"] = rat_str(tv_cells);
        row["tv_sh_all_vs_masses"] = rat_str(tv_sh_all);
        row["tv_shperp_all_vs_masses"] = rat_str(tv_shperp_all);
        row["tv_sh_sharp_vs_masses"] = rat_str(tv_sh_sharp);
        row["tv_shperp_sharp_vs_masses"] = rat_str(tv_shperp_sharp);
        row["tv_det_vs_uniform"] = rat_str(tv_det);
        row["tv_independence_defect"] = rat_str(tv_indep);
        row["shape_mass_tail_exact"] = shd_masses.tail_exact && shn_masses.tail_exact;
        ordered_json obs;
        auto dump_marginal = [&](const char* name, const std::map<std::string, long>& m,
                                 long long N, const std::function<Rational(const std::string&)>& pred) {
            ordered_json a = ordered_json::array();
            for (const auto& [k, v] : m) {
                ordered_json o;
                o["key"] = k;
                o["count"] = v;
                Rational p = pred(k);
                o["predicted_mass"] = rat_str(p);
                o["empirical_mass"] = rat_str(Rational(v, N));
                a.push_back(o);
                rep.csv.push_back({i, std::string(name) + ":" + k, std::to_string(v), rat_str(p),
                                   rat_str(Rational(v, N)), "0"});
            }
            obs[name] = a;
        };
        dump_marginal("cell", acc.cells, acc.n_sharp, [&](const std::string&) { return cellmass; });
        dump_marginal("sh", acc.sh_all, acc.n_all, [&](const std::string& k) {
            auto it = shd_masses.p.find(k);
            return it == shd_masses.p.end() ? Rational(0) : it->second;
        });
        dump_marginal("shperp", acc.shperp_all, acc.n_all, [&](const std::string& k) {
            auto it = shn_masses.p.find(k);
            return it == shn_masses.p.end() ? Rational(0) : it->second;
        });
        dump_marginal("det", acc.detcls, acc.n_sharp, [&](const std::string&) { return detmass; });
        row["marginals"] = obs;
        ordered_json joint = ordered_json::array();
        long long joint_total = 0;
        for (const auto& [k, v] : acc.joint) {
            ordered_json o;
            o["key"] = k;
            o["count"] = v;
            joint.push_back(o);
            joint_total += v;
            rep.csv.push_back({i, "joint:" + k, std::to_string(v), "0",
                               rat_str(Rational(v, acc.n_sharp)), "0"});
        }
        row["joint"] = joint;
        row["joint_counts_sum_to_N_sharp"] = joint_total == acc.n_sharp;
        table.push_back(row);

        rep.csv.push_back({i, "_tv:cells", "0", "0", "0", rat_str(tv_cells)});
        rep.csv.push_back({i, "_tv:shperp_all", "0", "0", "0", rat_str(tv_shperp_all)});
        rep.csv.push_back({i, "_tv:sh_all", "0", "0", "0", rat_str(tv_sh_all)});
        rep.csv.push_back({i, "_tv:det", "0", "0", "0", rat_str(tv_det)});
        rep.csv.push_back({i, "_tv:independence", "0", "0", "0", rat_str(tv_indep)});
    }
    rep.json["table"] = table;
    rep.json["budget_exceeded"] = partial;
    rep.json["tv_cells_slope"] = detail::regression_slope(cfg.q, tv_seq_cells);
    rep.json["tv_shperp_slope"] = detail::regression_slope(cfg.q, tv_seq_shperp_all);
    rep.json["slope_note"] =
        "least-squares slope of log_q TV against lcm(d,n) D i; the guaranteed error "
        "exponent is only known to lie in (0, 1/(2 D^2)]";
    return rep;
}

// ---------------------------------------------------------------------------
// det-class experiment: distribution in (1 + pi O)/(1 + pi^j O)

struct DetAcc {
    long long n_sharp = 0;
    std::map<std::string, long> detcls;
    void merge(const DetAcc& o) {
        n_sharp += o.n_sharp;
        for (const auto& [k, v] : o.detcls) detcls[k] += v;
    }
};

inline ExperimentReport run_detclass(const ExperimentConfig& cfg) {
    const int ell = cfg.ell(), D = cfg.D, d = cfg.d;
    const int jp = cfg.jet_precision;
    ExperimentReport rep;
    rep.kind = "detclass";
    rep.json["experiment"] = "detclass";
    rep.json["q"] = cfg.q;
    rep.json["D"] = D;
    rep.json["d"] = d;
    rep.json["ideal"] = poly_str(cfg.ideal.gen());
    rep.json["i_max"] = cfg.i_max;
    rep.json["jet_precision"] = jp;
    ordered_json table = ordered_json::array();
    bool partial = false;
    std::vector<std::pair<long, Rational>> tv_seq;
    for (int i = 1; i <= cfg.i_max; ++i) {
        EnumSpec spec(cfg.q, D, d, ell * i, cfg.ideal);
        DetAcc acc;
        try {
            acc = detail::map_reduce<DetAcc>(
                spec, cfg.budget, cfg.workers, [&](const PartialLattice& L, DetAcc& a) {
                    if (!is_sharp(L)) return;
                    a.n_sharp++;
                    CorrelatedPair pair = correlated_pair(L, std::max(jp, 2));
                    a.detcls[det_class_key(pair.det_jet, jp)]++;
                });
        } catch (const BudgetExceeded&) {
            partial = true;
            break;
        }
        Rational detmass = q_pow(cfg.q, -(jp - 1));
        BigInt ndet = numerator(q_pow(cfg.q, jp - 1));
        Rational tv = detail::tv_to_uniform(acc.detcls, acc.n_sharp, detmass, ndet);
        tv_seq.emplace_back(ell * D * i, tv);
        ordered_json row;
        row["i"] = i;
        row["covol_exp"] = ell * i;
        row["N_sharp"] = acc.n_sharp;
        row["tv_det_vs_uniform"] = rat_str(tv);
        ordered_json cls = ordered_json::array();
        for (const auto& [k, v] : acc.detcls) {
            ordered_json o;
            o["key"] = k;
            o["count"] = v;
            o["predicted_mass"] = rat_str(detmass);
            o["empirical_mass"] = rat_str(Rational(v, acc.n_sharp));
            cls.push_back(o);
            rep.csv.push_back({i, "det:" + k, std::to_string(v), rat_str(detmass),
                               rat_str(Rational(v, acc.n_sharp)), "0"});
        }
        row["classes"] = cls;
        table.push_back(row);
        rep.csv.push_back({i, "_tv:det", "0", "0", "0", rat_str(tv)});
    }
    rep.json["table"] = table;
    rep.json["budget_exceeded"] = partial;
    rep.json["tv_slope"] = detail::regression_slope(cfg.q, tv_seq);
    return rep;
}

// ---------------------------------------------------------------------------
// bit-stable emission

inline std::string report_csv(const ExperimentReport& r) {
    std::string out = "i,key,count,predicted_mass,empirical_mass,tv\n";
    for (const auto& row : r.csv) {
        out += std::to_string(row.i);
        out += ",\"" + row.key + "\"," + row.count + "," + row.predicted + "," + row.empirical +
               "," + row.tv + "\n";
    }
    return out;
}

inline std::string report_json(const ExperimentReport& r) { return r.json.dump(1) + "\n"; }

// writes <prefix>.csv and <prefix>.json
inline void emit_report(const ExperimentReport& r, const std::string& prefix) {
    {
        std::ofstream f(prefix + ".csv", std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + prefix + ".csv");
        f << report_csv(r);
    }
    {
        std::ofstream f(prefix + ".json", std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + prefix + ".json");
        f << report_json(r);
    }
}

} // namespace fqlat
