// Batch front end: sampling, flows, retraction paths, trace relations and
// boundary/dimension experiments over SL(2,C) and SL(3,C), with reproducible
// seeds and JSON/CSV output.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "charvar/charvar.hpp"

using namespace charvar;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitPropertyFailure = 3;

struct RunConfig {
    std::string group = "sl2";
    std::uint64_t seed = 0;
    long samples = 1000;
    double tol = 1e-8;
    double radius = 1.0;
    int m = 0;
    int n = 0;
    int genus = 0;
    int punctures = 0;  // 0 = derive from m + n and genus
    std::string output = "-";
    std::string format = "json";
    long max_iter = 10000;
    int grid = 5;
    int depth = 4;
    bool identity_first = false;
    double wd_tol = 1e-9;
    double inj_in = 1e-4;
    double inj_out = 1e-6;
    std::string x = "0", y = "0", z = "0";
};

void add_common(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--group", cfg.group, "matrix group: sl2 or sl3")
        ->check(CLI::IsMember({"sl2", "sl3"}));
    cmd->add_option("--seed", cfg.seed, "random seed (64-bit)");
    cmd->add_option("--samples", cfg.samples, "sample count");
    cmd->add_option("--radius", cfg.radius, "noncompact sampling radius");
    cmd->add_option("--output", cfg.output, "output path, - for stdout");
    cmd->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
}

void write_output(const RunConfig& cfg, const std::string& text) {
    if (cfg.output == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidElement, "cannot open output file " + cfg.output);
    out << text;
}

void emit_json(const RunConfig& cfg, const json& doc) {
    write_output(cfg, doc.dump(2) + "\n");
}

/// Guard for subcommands whose output has no flat row shape.
void require_json(const RunConfig& cfg, const char* cmd) {
    if (cfg.format != "json")
        throw Error(ErrorCode::InvalidElement, std::string(cmd) + " only supports --format json");
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void emit_csv(const RunConfig& cfg, const std::vector<std::string>& header,
              const std::vector<std::vector<double>>& rows) {
    std::ostringstream out;
    out << "index";
    for (const auto& h : header) out << "," << h;
    out << "\n";
    for (size_t i = 0; i < rows.size(); ++i) {
        out << i;
        for (double v : rows[i]) out << "," << fmt_double(v);
        out << "\n";
    }
    write_output(cfg, out.str());
}

cplx parse_complex(const std::string& text) {
    const auto comma = text.find(',');
    try {
        if (comma == std::string::npos) return cplx(std::stod(text), 0.0);
        return cplx(std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1)));
    } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidElement, "cannot parse complex number '" + text + "'");
    }
}

constexpr std::uint64_t kSetupStream = 0x8000000000000000ULL;

template <int N>
std::shared_ptr<const ParabolicData<N>> sample_pardata(const RunConfig& cfg) {
    Rng rng(Rng::derive(cfg.seed, kSetupStream));
    std::vector<UnitaryElement<N>> hs;
    for (int i = 0; i < cfg.m; ++i) {
        if (i == 0 && cfg.identity_first)
            hs.push_back(UnitaryElement<N>::identity());
        else
            hs.push_back(random_regular_unitary<N>(rng));
    }
    return ParabolicData<N>::make(std::move(hs));
}

template <int N>
RepTuple<N> sample_tuple(Rng& rng, std::shared_ptr<const ParabolicData<N>> pardata, int n,
                         double radius) {
    std::vector<GroupElement<N>> orbit;
    for (int i = 0; i < pardata->count(); ++i) {
        const auto q = random_group_element<N>(rng, radius);
        orbit.push_back(GroupElement<N>(q.mat() * pardata->h[i].mat() * q.inverse().mat()));
    }
    std::vector<GroupElement<N>> free_parts;
    for (int j = 0; j < n; ++j) free_parts.push_back(random_group_element<N>(rng, radius));
    return RepTuple<N>(std::move(pardata), std::move(orbit), std::move(free_parts));
}

SurfaceData make_surface(const RunConfig& cfg) {
    const int b = cfg.punctures > 0 ? cfg.punctures : cfg.m + cfg.n + 1 - 2 * cfg.genus;
    return SurfaceData(cfg.genus, b, cfg.m, cfg.n);
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

template <int N>
int run_sample(const RunConfig& cfg) {
    require_json(cfg, "sample");

    auto pardata = sample_pardata<N>(cfg);
    auto tuples = parallel_map<json>(size_t(cfg.samples), [&](size_t i) {
        Rng rng(Rng::derive(cfg.seed, i));
        return to_json(sample_tuple<N>(rng, pardata, cfg.n, cfg.radius));
    });
    json hs = json::array();
    for (const auto& h : pardata->h) hs.push_back(to_json(h));
    emit_json(cfg,
              json{{"group", cfg.group}, {"seed", cfg.seed}, {"h", hs}, {"samples", tuples}});
    return 0;
}

template <int N>
int run_polar(const RunConfig& cfg) {
    require_json(cfg, "polar");

    auto rows = parallel_map<json>(size_t(cfg.samples), [&](size_t i) {
        Rng rng(Rng::derive(cfg.seed, i));
        const auto g = random_group_element<N>(rng, cfg.radius);
        const auto kp = polar_decompose(g);
        return json{{"g", to_json(g)}, {"k", to_json(kp.k)}, {"p", to_json(kp.p)}};
    });
    emit_json(cfg, json{{"group", cfg.group}, {"seed", cfg.seed}, {"samples", rows}});
    return 0;
}

template <int N>
int run_retract(const RunConfig& cfg) {
    require_json(cfg, "retract");

    if (cfg.grid < 2) throw Error(ErrorCode::InvalidElement, "grid needs at least 2 points");
    auto pardata = sample_pardata<N>(cfg);
    auto rows = parallel_map<json>(size_t(cfg.samples), [&](size_t i) {
        Rng rng(Rng::derive(cfg.seed, i));
        const auto tuple = sample_tuple<N>(rng, pardata, cfg.n, cfg.radius);
        const auto path = build_retraction(tuple);
        json points = json::array();
        for (int k = 0; k < cfg.grid; ++k) {
            const double t = double(k) / double(cfg.grid - 1);
            points.push_back(json{{"t", t}, {"tuple", to_json(evaluate_path(path, t))}});
        }
        return json{{"input", to_json(tuple)}, {"path", to_json(path)}, {"points", points}};
    });
    json hs = json::array();
    for (const auto& h : pardata->h) hs.push_back(to_json(h));
    emit_json(cfg, json{{"group", cfg.group}, {"seed", cfg.seed}, {"h", hs}, {"samples", rows}});
    return 0;
}

template <int N>
int run_kn_flow(const RunConfig& cfg) {
    require_json(cfg, "kn-flow");

    auto pardata = sample_pardata<N>(cfg);
    Rng rng(Rng::derive(cfg.seed, 0));
    const auto w = random_group_element<N>(rng, cfg.radius);
    KnPoint<N> start;
    for (int i = 0; i < cfg.m; ++i)
        start.f.push_back(GroupElement<N>(w.mat() * random_unitary<N>(rng).mat()));
    for (int j = 0; j < cfg.n; ++j)
        start.g.push_back(
            GroupElement<N>(w.mat() * random_unitary<N>(rng).mat() * w.inverse().mat()));
    auto [end, report] = kn_flow(start, *pardata, cfg.tol, cfg.max_iter);

    json fs = json::array();
    for (const auto& f : end.f) fs.push_back(to_json(f));
    json gs = json::array();
    for (const auto& g : end.g) gs.push_back(to_json(g));
    emit_json(cfg, json{{"group", cfg.group},
                        {"seed", cfg.seed},
                        {"report", to_json(report)},
                        {"final", json{{"f", fs}, {"g", gs}}}});
    return 0;
}

template <int N>
int run_traces(const RunConfig& cfg) {
    auto rows = parallel_map<TraceVector>(size_t(cfg.samples), [&](size_t i) {
        Rng rng(Rng::derive(cfg.seed, i));
        if constexpr (N == 2) {
            return sl2_seven_traces(random_group_element<2>(rng, cfg.radius),
                                    random_group_element<2>(rng, cfg.radius),
                                    random_group_element<2>(rng, cfg.radius));
        } else {
            return sl3_nine_traces(random_group_element<3>(rng, cfg.radius),
                                   random_group_element<3>(rng, cfg.radius));
        }
    });
    if (cfg.format == "csv") {
        std::vector<std::string> header;
        for (const auto& label : rows.front().labels) {
            header.push_back(label + "_re");
            header.push_back(label + "_im");
        }
        std::vector<std::vector<double>> data;
        for (const auto& tv : rows) {
            std::vector<double> row;
            for (const auto& v : tv.values) {
                row.push_back(v.real());
                row.push_back(v.imag());
            }
            data.push_back(std::move(row));
        }
        emit_csv(cfg, header, data);
        return 0;
    }
    json samples = json::array();
    for (const auto& tv : rows) samples.push_back(to_json(tv));
    emit_json(cfg, json{{"group", cfg.group}, {"seed", cfg.seed}, {"samples", samples}});
    return 0;
}

int run_fricke_check(const RunConfig& cfg) {
    if (cfg.group != "sl2")
        throw Error(ErrorCode::InvalidElement, "fricke-check is an SL(2) relation");
    struct Row {
        double corrected, paper, bound;
    };
    auto rows = parallel_map<Row>(size_t(cfg.samples), [&](size_t i) {
        TraceVector tv;
        if (i == 0) {
            // identity representation, included in every batch
            const auto id = GroupElement<2>::identity();
            tv = sl2_seven_traces(id, id, id);
        } else {
            Rng rng(Rng::derive(cfg.seed, i));
            tv = sl2_seven_traces(random_group_element<2>(rng, cfg.radius),
                                  random_group_element<2>(rng, cfg.radius),
                                  random_group_element<2>(rng, cfg.radius));
        }
        double maxcoord = 0.0;
        for (const auto& v : tv.values) maxcoord = std::max(maxcoord, std::abs(v));
        return Row{std::abs(fricke_cubic(tv, FrickeVariant::Corrected)),
                   std::abs(fricke_cubic(tv, FrickeVariant::PaperPrinted)),
                   std::pow(1.0 + maxcoord, 3.0)};
    });

    double corrected_max = 0.0, paper_max = 0.0, worst_ratio = 0.0;
    for (const auto& r : rows) {
        corrected_max = std::max(corrected_max, r.corrected);
        paper_max = std::max(paper_max, r.paper);
        worst_ratio = std::max(worst_ratio, r.corrected / r.bound);
    }
    const bool pass = worst_ratio <= cfg.tol;

    if (cfg.format == "csv") {
        std::vector<std::vector<double>> data;
        for (const auto& r : rows) data.push_back({r.corrected, r.paper, r.bound});
        emit_csv(cfg, {"corrected_abs", "paper_abs", "coord_bound"}, data);
    } else {
        emit_json(
            cfg,
            json{{"group", cfg.group},
                 {"seed", cfg.seed},
                 {"samples", cfg.samples},
                 {"tol", cfg.tol},
                 {"results", json::array({json{{"variant", "corrected"},
                                               {"max_abs", corrected_max},
                                               {"max_scaled", worst_ratio}},
                                          json{{"variant", "paper"}, {"max_abs", paper_max}}})},
                 {"pass", pass}});
    }
    return pass ? 0 : kExitPropertyFailure;
}

int run_lift(const RunConfig& cfg) {
    require_json(cfg, "lift");

    const cplx x = parse_complex(cfg.x);
    const cplx y = parse_complex(cfg.y);
    const cplx z = parse_complex(cfg.z);
    const auto [g1, g2] = sl2_lift(x, y, z);
    const auto triple = sl2_trace_triple(g1, g2);
    const double err =
        std::max({std::abs(triple[0] - x), std::abs(triple[1] - y), std::abs(triple[2] - z)});
    emit_json(cfg, json{{"target", json::array({to_json(x), to_json(y), to_json(z)})},
                        {"g1", to_json(g1)},
                        {"g2", to_json(g2)},
                        {"roundtrip_error", err}});
    return 0;
}

template <int N>
int run_boundary(const RunConfig& cfg) {
    const SurfaceData surf = make_surface(cfg);
    auto rows = parallel_map<std::pair<json, BoundaryVector>>(size_t(cfg.samples), [&](size_t i) {
        Rng rng(Rng::derive(cfg.seed, i));
        std::vector<GroupElement<N>> tuple;
        for (int k = 0; k < surf.generators(); ++k)
            tuple.push_back(random_group_element<N>(rng, cfg.radius));
        json tj = json::array();
        for (const auto& g : tuple) tj.push_back(to_json(g));
        return std::make_pair(std::move(tj), boundary(tuple, surf));
    });
    if (cfg.format == "csv") {
        std::vector<std::string> header;
        const int coords = N == 2 ? 1 : 2;
        for (int p = 0; p < surf.punctures; ++p)
            for (int c = 0; c < coords; ++c) {
                const std::string base = "b" + std::to_string(p + 1) +
                                         (coords == 2 ? std::string(1, char('a' + c)) : "");
                header.push_back(base + "_re");
                header.push_back(base + "_im");
            }
        std::vector<std::vector<double>> data;
        for (const auto& [tj, bv] : rows) {
            std::vector<double> row;
            for (const auto& p : bv.points)
                for (const auto& v : p.coords) {
                    row.push_back(v.real());
                    row.push_back(v.imag());
                }
            data.push_back(std::move(row));
        }
        emit_csv(cfg, header, data);
        return 0;
    }
    json samples = json::array();
    for (const auto& [tj, bv] : rows)
        samples.push_back(json{{"tuple", tj}, {"boundary", to_json(bv)}});
    emit_json(cfg, json{{"group", cfg.group},
                        {"seed", cfg.seed},
                        {"genus", surf.genus},
                        {"punctures", surf.punctures},
                        {"m", surf.m},
                        {"n", surf.n},
                        {"samples", samples}});
    return 0;
}

template <int N>
int run_diagram_check(const RunConfig& cfg) {
    const SurfaceData surf = make_surface(cfg);
    auto devs = parallel_map<double>(size_t(cfg.samples), [&](size_t i) {
        Rng rng(Rng::derive(cfg.seed, i));
        std::vector<GroupElement<N>> tuple;
        for (int k = 0; k < surf.generators(); ++k)
            tuple.push_back(random_group_element<N>(rng, cfg.radius));
        return diagram_check(tuple, surf);
    });
    double worst = 0.0;
    for (double d : devs) worst = std::max(worst, d);
    const bool pass = worst <= cfg.tol;
    if (cfg.format == "csv") {
        std::vector<std::vector<double>> data;
        for (double d : devs) data.push_back({d});
        emit_csv(cfg, {"discrepancy"}, data);
    } else {
        emit_json(cfg, json{{"group", cfg.group},
                            {"seed", cfg.seed},
                            {"samples", cfg.samples},
                            {"max_discrepancy", worst},
                            {"tol", cfg.tol},
                            {"pass", pass}});
    }
    return pass ? 0 : kExitPropertyFailure;
}

template <int N>
int run_dim(const RunConfig& cfg) {
    require_json(cfg, "dim");

    auto pardata = sample_pardata<N>(cfg);
    Rng rng(Rng::derive(cfg.seed, 0));
    const auto est = dim_estimate(*pardata, cfg.n, int(std::max(1L, std::min(cfg.samples, 64L))),
                                  rng, cfg.radius);
    emit_json(cfg, json{{"group", cfg.group},
                        {"seed", cfg.seed},
                        {"m", cfg.m},
                        {"n", cfg.n},
                        {"dim_H", est.dim_H},
                        {"dim_stab", est.dim_stab},
                        {"dim_X", est.dim_X},
                        {"dim_formula", est.dim_formula},
                        {"match", est.match}});
    return 0;
}

template <int N>
int run_eta_check(const RunConfig& cfg) {
    require_json(cfg, "eta-check");

    if (cfg.m < 1) throw Error(ErrorCode::InvalidElement, "eta-check needs m >= 1");
    Rng setup(Rng::derive(cfg.seed, kSetupStream));

    // regular diagonal first element: diagonalized Haar sample
    UnitaryElement<N> x = [&] {
        for (;;) {
            const auto u = random_regular_unitary<N>(setup, 0.2);
            const auto ev = eigenvalues(u.mat());
            Matrix<N> d;
            for (int i = 0; i < N; ++i) d(i, i) = ev[i] / std::abs(ev[i]);
            const UnitaryElement<N> cand(detail::normalize_det(d));
            if (is_regular(cand.group())) return cand;
        }
    }();
    const auto ctx = TorusContext<N>::make(x);

    std::vector<UnitaryElement<N>> rest_h;
    for (int i = 1; i < cfg.m; ++i) rest_h.push_back(random_regular_unitary<N>(setup));
    auto rest_pardata = ParabolicData<N>::make(rest_h);
    std::vector<UnitaryElement<N>> full_h;
    full_h.push_back(x);
    for (const auto& h : rest_h) full_h.push_back(h);
    auto full_pardata = ParabolicData<N>::make(full_h);

    auto unitary_rest = [&](Rng& rng) {
        std::vector<GroupElement<N>> orbit;
        for (int i = 0; i < rest_pardata->count(); ++i) {
            const auto v = random_unitary<N>(rng);
            orbit.push_back(
                GroupElement<N>(v.mat() * rest_pardata->h[i].mat() * v.mat().adjoint()));
        }
        std::vector<GroupElement<N>> free_parts;
        for (int j = 0; j < cfg.n; ++j) free_parts.push_back(random_unitary<N>(rng).group());
        return RepTuple<N>(rest_pardata, std::move(orbit), std::move(free_parts));
    };
    auto random_torus = [&](Rng& rng) {
        std::array<double, N> theta{};
        double sum = 0.0;
        for (int i = 0; i < N - 1; ++i) {
            theta[i] = 6.283185307179586 * rng.uniform01();
            sum += theta[i];
        }
        theta[N - 1] = -sum;
        Matrix<N> d;
        for (int i = 0; i < N; ++i) d(i, i) = std::polar(1.0, theta[i]);
        return d;
    };
    auto conj_tuple = [](const RepTuple<N>& t, const Matrix<N>& u) {
        std::vector<GroupElement<N>> orbit;
        for (const auto& yc : t.orbit) orbit.push_back(GroupElement<N>(u * yc.mat() * u.adjoint()));
        std::vector<GroupElement<N>> free_parts;
        for (const auto& g : t.free_parts)
            free_parts.push_back(GroupElement<N>(u * g.mat() * u.adjoint()));
        return RepTuple<N>(t.pardata, std::move(orbit), std::move(free_parts));
    };

    struct Row {
        double wd = 0.0, surj = 0.0;
        int inj_checked = 0, inj_failed = 0;
    };
    auto rows = parallel_map<Row>(size_t(cfg.samples), [&](size_t i) {
        Rng rng(Rng::derive(cfg.seed, i));
        Row row;

        // well-definedness under torus conjugation
        const auto rest = unitary_rest(rng);
        const auto moved = conj_tuple(rest, random_torus(rng));
        row.wd = fingerprint_distance(fingerprint(eta(ctx, rest), cfg.depth),
                                      fingerprint(eta(ctx, moved), cfg.depth));

        // injectivity witness on an independent second sample
        const auto rest2 = unitary_rest(rng);
        if (fingerprint_distance(fingerprint(rest, &ctx, cfg.depth),
                                 fingerprint(rest2, &ctx, cfg.depth)) > cfg.inj_in) {
            row.inj_checked = 1;
            if (fingerprint_distance(fingerprint(eta(ctx, rest), cfg.depth),
                                     fingerprint(eta(ctx, rest2), cfg.depth)) <= cfg.inj_out)
                row.inj_failed = 1;
        }

        // surjectivity witness: a full tuple returns to its own class
        std::vector<GroupElement<N>> orbit;
        for (int k = 0; k < full_pardata->count(); ++k) {
            const auto v = random_unitary<N>(rng);
            orbit.push_back(
                GroupElement<N>(v.mat() * full_pardata->h[k].mat() * v.mat().adjoint()));
        }
        std::vector<GroupElement<N>> free_parts;
        for (int j = 0; j < cfg.n; ++j) free_parts.push_back(random_unitary<N>(rng).group());
        RepTuple<N> tuple(full_pardata, std::move(orbit), std::move(free_parts));
        row.surj = fingerprint_distance(fingerprint(eta(ctx, eta_inverse(ctx, tuple)), cfg.depth),
                                        fingerprint(tuple, cfg.depth));
        return row;
    });

    double wd_max = 0.0, surj_max = 0.0;
    long inj_checked = 0, inj_failed = 0;
    for (const auto& r : rows) {
        wd_max = std::max(wd_max, r.wd);
        surj_max = std::max(surj_max, r.surj);
        inj_checked += r.inj_checked;
        inj_failed += r.inj_failed;
    }
    const bool pass = wd_max <= cfg.wd_tol && surj_max <= cfg.wd_tol && inj_failed == 0;
    emit_json(cfg, json{{"group", cfg.group},
                        {"seed", cfg.seed},
                        {"m", cfg.m},
                        {"n", cfg.n},
                        {"depth", cfg.depth},
                        {"well_defined_max", wd_max},
                        {"surjectivity_max", surj_max},
                        {"injectivity_checked", inj_checked},
                        {"injectivity_failures", inj_failed},
                        {"pass", pass}});
    return pass ? 0 : kExitPropertyFailure;
}

int run_two_to_one(const RunConfig& cfg) {
    if (cfg.group != "sl3")
        throw Error(ErrorCode::InvalidElement, "two-to-one is the SL(3) transpose experiment");
    struct Row {
        double preserve_dev, t9_dev;
    };
    auto rows = parallel_map<Row>(size_t(cfg.samples), [&](size_t i) {
        Rng rng(Rng::derive(cfg.seed, i));
        const auto g1 = random_group_element<3>(rng, cfg.radius);
        const auto g2 = random_group_element<3>(rng, cfg.radius);
        const auto tv = sl3_nine_traces(g1, g2);
        const auto [a, b] = sl3_transpose_involution(g1, g2);
        const auto tw = sl3_nine_traces(a, b);
        double preserve = 0.0;
        for (int k = 0; k < 8; ++k)
            preserve = std::max(preserve, std::abs(tv.values[k] - tw.values[k]));
        return Row{preserve, std::abs(tv.values[8] - tw.values[8])};
    });
    double preserve_max = 0.0;
    long moved = 0;
    for (const auto& r : rows) {
        preserve_max = std::max(preserve_max, r.preserve_dev);
        if (r.t9_dev > 1e-4) ++moved;
    }
    const double fraction = double(moved) / double(cfg.samples);
    const bool pass = preserve_max <= 1e-10 && fraction >= 0.99;
    if (cfg.format == "csv") {
        std::vector<std::vector<double>> data;
        for (const auto& r : rows) data.push_back({r.preserve_dev, r.t9_dev});
        emit_csv(cfg, {"preserve_dev", "t9_dev"}, data);
    } else {
        emit_json(cfg, json{{"group", cfg.group},
                            {"seed", cfg.seed},
                            {"samples", cfg.samples},
                            {"preserve_max", preserve_max},
                            {"t9_moved_fraction", fraction},
                            {"pass", pass}});
    }
    return pass ? 0 : kExitPropertyFailure;
}

template <int N>
int dispatch(const std::string& name, const RunConfig& cfg) {
    if (name == "sample") return run_sample<N>(cfg);
    if (name == "polar") return run_polar<N>(cfg);
    if (name == "retract") return run_retract<N>(cfg);
    if (name == "kn-flow") return run_kn_flow<N>(cfg);
    if (name == "traces") return run_traces<N>(cfg);
    if (name == "boundary") return run_boundary<N>(cfg);
    if (name == "diagram-check") return run_diagram_check<N>(cfg);
    if (name == "dim") return run_dim<N>(cfg);
    if (name == "eta-check") return run_eta_check<N>(cfg);
    throw Error(ErrorCode::InvalidElement, "unknown command " + name);
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"parabolic character variety experiments over SL(2,C)/SL(3,C)"};
    app.require_subcommand(1);

    auto* sample = app.add_subcommand("sample", "emit random representation tuples");
    auto* polar = app.add_subcommand("polar", "polar-decompose random group elements");
    auto* retract = app.add_subcommand("retract", "retraction paths sampled on a t-grid");
    auto* knflow = app.add_subcommand("kn-flow", "run the Kempf-Ness descent flow");
    auto* traces = app.add_subcommand("traces", "trace coordinates of random tuples");
    auto* fricke = app.add_subcommand("fricke-check", "vanishing statistics of the trace cubic");
    auto* lift = app.add_subcommand("lift", "SL(2) pair with a prescribed trace triple");
    auto* bnd = app.add_subcommand("boundary", "boundary classes of random tuples");
    auto* diag = app.add_subcommand("diagram-check", "commutativity of the boundary square");
    auto* dim = app.add_subcommand("dim", "numeric dimension of a parabolic character variety");
    auto* eta = app.add_subcommand("eta-check", "regular-reduction witnesses");
    auto* two = app.add_subcommand("two-to-one", "SL(3) transpose two-to-one experiment");

    for (CLI::App* cmd :
         {sample, polar, retract, knflow, traces, fricke, lift, bnd, diag, dim, eta, two})
        add_common(cmd, cfg);
    for (CLI::App* cmd : {sample, retract, knflow, bnd, diag, dim, eta}) {
        cmd->add_option("--m", cfg.m, "parabolic factor count");
        cmd->add_option("--n", cfg.n, "free factor count");
    }
    for (CLI::App* cmd : {bnd, diag}) {
        cmd->add_option("--genus", cfg.genus, "surface genus");
        cmd->add_option("--punctures", cfg.punctures, "puncture count (default m + n + 1 - 2g)");
    }
    for (CLI::App* cmd : {knflow, fricke, diag, eta})
        cmd->add_option("--tol", cfg.tol, "tolerance for this check");
    knflow->add_option("--max-iter", cfg.max_iter, "iteration budget");
    retract->add_option("--grid", cfg.grid, "number of t samples in [0,1]");
    dim->add_flag("--identity-first", cfg.identity_first, "set h_1 = I (degenerate class)");
    eta->add_option("--depth", cfg.depth, "fingerprint word depth");
    eta->add_option("--wd-tol", cfg.wd_tol, "well-definedness / surjectivity tolerance");
    eta->add_option("--inj-in", cfg.inj_in, "injectivity input separation");
    eta->add_option("--inj-out", cfg.inj_out, "injectivity output separation");
    lift->add_option("--x", cfg.x, "target trace of g1 (re[,im])");
    lift->add_option("--y", cfg.y, "target trace of g2 (re[,im])");
    lift->add_option("--z", cfg.z, "target trace of g1 g2 (re[,im])");

    // per-command defaults
    fricke->parse_complete_callback([&] {
        if (fricke->count("--tol") == 0) cfg.tol = 1e-8;
        if (fricke->count("--radius") == 0) cfg.radius = 1.5;
    });
    diag->parse_complete_callback([&] {
        if (diag->count("--tol") == 0) cfg.tol = 1e-12;
        if (diag->count("--m") == 0) cfg.m = 2;
    });
    knflow->parse_complete_callback([&] {
        if (knflow->count("--tol") == 0) cfg.tol = 1e-6;
        if (knflow->count("--n") == 0 && knflow->count("--m") == 0) cfg.n = 2;
    });
    two->parse_complete_callback([&] {
        if (two->count("--group") == 0) cfg.group = "sl3";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitValidation;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    try {
        if (name == "fricke-check") return run_fricke_check(cfg);
        if (name == "lift") return run_lift(cfg);
        if (name == "two-to-one") return run_two_to_one(cfg);
        if (cfg.group == "sl2") return dispatch<2>(name, cfg);
        return dispatch<3>(name, cfg);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}
