// Copyright 2026 The lsself Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// lsself command-line front end.
//
//   lsself gen-game --d 3 --out game.json
//   lsself verify-rep --d 5
//   lsself self-test --d 3 --delta 0
//   lsself sweep --d 3 --kind both --delta 1e-4 --delta 1e-3 --trials 8
//
// Exit codes: 0 success, 2 bad input or failed precondition, 3 a verified
// residual exceeded the tolerance, 4 any other library error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lsself/errors.h"
#include "lsself/evaluation.h"
#include "lsself/isometry.h"
#include "lsself/lsg.h"
#include "lsself/representation.h"
#include "lsself/robustness.h"
#include "lsself/serialize.h"
#include "lsself/strategy.h"

namespace {

using namespace lsself;

constexpr int kExitInput = 2;
constexpr int kExitVerify = 3;
constexpr int kExitOther = 4;

struct Options {
    int d = 3;
    std::optional<int> r;
    std::optional<double> tolerance;
    uint64_t seed = 1;
    std::vector<double> deltas;
    std::vector<std::string> kinds;
    int trials = 8;
    std::string out;
    std::string in;
    std::string format;
};

void emit(const Options &opt, const std::string &text) {
    if (opt.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(opt.out, std::ios::binary);
    if (!f) {
        throw DomainError("cannot open output file " + opt.out);
    }
    f << text;
}

void require_format(const Options &opt, std::initializer_list<const char *> allowed) {
    for (const char *f : allowed) {
        if (opt.format == f) {
            return;
        }
    }
    throw DomainError("format '" + opt.format + "' is not supported by this command");
}

double single_delta(const Options &opt) {
    if (opt.deltas.size() > 1) {
        throw DomainError("this command takes at most one --delta");
    }
    return opt.deltas.empty() ? 0.0 : opt.deltas[0];
}

PerturbationKind single_kind(const Options &opt) {
    if (opt.kinds.size() > 1) {
        throw DomainError("this command takes at most one --kind");
    }
    return opt.kinds.empty() ? PerturbationKind::Both : parse_kind(opt.kinds[0]);
}

struct Setup {
    PrimeParams params;
    FullTest test;
    Rep rep;
    Strategy ideal;
    Correlation ideal_corr;
};

Setup make_setup(const Options &opt) {
    Setup s{make_prime_params(opt.d, opt.r), {}, {}, {}, {}};
    s.test = build_full_test(s.params);
    s.rep = build_representation(s.params);
    s.ideal = build_ideal_strategy(s.test, s.rep);
    s.ideal_corr = generate_correlation(s.ideal, s.test);
    return s;
}

Strategy requested_strategy(const Setup &s, const Options &opt) {
    return perturb_strategy(s.ideal, {single_kind(opt), single_delta(opt), opt.seed});
}

int cmd_gen_game(const Options &opt) {
    const auto params = make_prime_params(opt.d, opt.r);
    const GameLS game = build_ls_game(params.r);
    if (opt.format == "text") {
        emit(opt, emit_system_text(game.system));
    } else {
        require_format(opt, {"json"});
        emit(opt, dump(game_to_json(game)));
    }
    return 0;
}

json rep_summary(const PrimeParams &params, double &worst) {
    const Rep rep = build_representation(params);
    const double res = verify_representation(rep, rep.gamma);
    const KeyUnitaries key = key_unitaries(rep);
    worst = std::max({res, key.conj_residual, key.lifted_residual, key.factor_residual});
    return {{"d", params.d},
            {"r", params.r},
            {"dim", rep.dim},
            {"generators", presentation_stats(rep.gamma).generators},
            {"relations", static_cast<int>(rep.gamma.relations.size())},
            {"max_residual", res},
            {"conj_residual", key.conj_residual},
            {"lifted_residual", key.lifted_residual},
            {"factor_residual", key.factor_residual}};
}

int cmd_verify_rep(const Options &opt) {
    require_format(opt, {"json"});
    const double tol = opt.tolerance.value_or(1e-9);
    double worst = 0.0;
    json j = rep_summary(make_prime_params(opt.d, opt.r), worst);
    j["tolerance"] = tol;
    j["ok"] = worst <= tol;
    emit(opt, dump(j));
    return worst <= tol ? 0 : kExitVerify;
}

int cmd_gen_correlation(const Options &opt) {
    require_format(opt, {"json"});
    const Setup s = make_setup(opt);
    const Correlation c = single_delta(opt) == 0.0 ? s.ideal_corr
                                                   : generate_correlation(requested_strategy(s, opt), s.test);
    emit(opt, dump(correlation_to_json(c, s.test)));
    return 0;
}

int cmd_eval(const Options &opt) {
    require_format(opt, {"json"});
    const Setup s = make_setup(opt);
    Correlation c;
    if (!opt.in.empty()) {
        std::ifstream f(opt.in);
        if (!f) {
            throw DomainError("cannot open input file " + opt.in);
        }
        json j;
        try {
            f >> j;
        } catch (const json::exception &e) {
            throw DomainError(std::string("input is not valid JSON: ") + e.what());
        }
        c = correlation_from_json(j, s.test);
    } else {
        c = generate_correlation(requested_strategy(s, opt), s.test);
    }
    emit(opt, dump(eval_to_json(evaluate(c, s.test, s.ideal_corr))));
    return 0;
}

int cmd_self_test(const Options &opt) {
    require_format(opt, {"json"});
    const double tol = opt.tolerance.value_or(1e-8);
    const Setup s = make_setup(opt);
    const double delta = single_delta(opt);
    const SelfTestReport rep = selftest_report(requested_strategy(s, opt), s.test, s.ideal_corr);
    json j = report_to_json(rep);
    j["d"] = s.params.d;
    j["r"] = s.params.r;
    j["delta"] = delta;
    emit(opt, dump(j));
    if (delta > 0.0) {
        return 0;  // perturbed runs are reported, not judged
    }
    bool ok = std::abs(rep.junk_norm - 1.0) <= tol;
    for (const auto &[label, v] : rep.distances) {
        ok = ok && v <= tol;
    }
    return ok ? 0 : kExitVerify;
}

int cmd_sweep(const Options &opt) {
    SweepConfig cfg;
    cfg.d = opt.d;
    cfg.r = opt.r;
    cfg.seed = opt.seed;
    cfg.trials = opt.trials;
    if (!opt.deltas.empty()) {
        cfg.magnitudes = opt.deltas;
    }
    if (!opt.kinds.empty()) {
        cfg.kinds.clear();
        for (const auto &k : opt.kinds) {
            cfg.kinds.push_back(parse_kind(k));
        }
    }
    const auto records = run_sweep(cfg);
    if (opt.format == "json") {
        json recs = json::array();
        for (const auto &rec : records) {
            json r = report_to_json(rec.report);
            r["kind"] = kind_name(rec.spec.kind);
            r["delta"] = rec.spec.delta;
            r["seed"] = rec.spec.seed;
            json res = json::object();
            for (const auto &[k, v] : rec.residuals) {
                res[k] = v;
            }
            r["residuals"] = res;
            recs.push_back(r);
        }
        json j = {{"d", records.empty() ? opt.d : records[0].d}, {"records", recs}};
        try {
            const BoundFit fit = fit_bound(records);
            j["fit"] = {{"C_fit", fit.C_fit}, {"exponent_fit", fit.exponent_fit}, {"violations", fit.violations}};
        } catch (const DomainError &) {
            j["fit"] = nullptr;
        }
        emit(opt, dump(j));
    } else {
        require_format(opt, {"csv"});
        emit(opt, sweep_csv(records));
    }
    return 0;
}

int cmd_demo_family(const Options &opt) {
    require_format(opt, {"json"});
    const double tol = opt.tolerance.value_or(1e-8);
    json runs = json::array();
    bool ok = true;
    for (int d : {3, 5, 7, 11, 13}) {
        Options o = opt;
        o.d = d;
        o.r.reset();
        double worst = 0.0;
        json j = rep_summary(make_prime_params(d), worst);
        const Setup s = make_setup(o);
        const SelfTestReport rep = selftest_report(s.ideal, s.test, s.ideal_corr);
        double dmax = 0.0;
        for (const auto &[label, v] : rep.distances) {
            dmax = std::max(dmax, v);
        }
        j["selftest"] = report_to_json(rep);
        j["max_distance"] = dmax;
        j["ok"] = worst <= tol && dmax <= tol && std::abs(rep.junk_norm - 1.0) <= tol;
        ok = ok && j["ok"].get<bool>();
        runs.push_back(j);
    }
    emit(opt, dump({{"tolerance", tol}, {"runs", runs}}));
    return ok ? 0 : kExitVerify;
}

void print_error(const char *type, const std::string &msg, std::optional<double> residual = std::nullopt) {
    json j = {{"error", {{"type", type}, {"message", msg}}}};
    if (residual) {
        j["error"]["residual"] = *residual;
    }
    std::cerr << j.dump() << "\n";
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Self-testing toolkit for the LS(r) linear system game"};
    app.require_subcommand(1);
    Options opt;

    struct Spec {
        const char *name;
        const char *help;
        const char *default_format;
        int (*run)(const Options &);
    };
    const std::vector<Spec> specs = {
        {"gen-game", "Emit the LS(r) system and game", "json", cmd_gen_game},
        {"verify-rep", "Build and verify the representation", "json", cmd_verify_rep},
        {"gen-correlation", "Emit the correlation of the ideal or a perturbed strategy", "json",
         cmd_gen_correlation},
        {"eval", "Score a correlation file, or a generated strategy", "json", cmd_eval},
        {"self-test", "Swap-isometry self-test report", "json", cmd_self_test},
        {"sweep", "Robustness sweep", "csv", cmd_sweep},
        {"demo-family", "verify-rep and self-test for d in 3,5,7,11,13", "json", cmd_demo_family},
    };
    std::vector<CLI::App *> subs;
    for (const auto &sp : specs) {
        auto *sub = app.add_subcommand(sp.name, sp.help);
        sub->add_option("--d", opt.d, "odd prime dimension parameter")->capture_default_str();
        sub->add_option("--r", opt.r, "primitive root mod d (default: smallest)");
        sub->add_option("--tolerance", opt.tolerance, "verification tolerance");
        sub->add_option("--seed", opt.seed, "perturbation seed")->capture_default_str();
        sub->add_option("--delta", opt.deltas, "perturbation magnitude (repeatable for sweep)");
        sub->add_option("--kind", opt.kinds, "perturbation kind: state, rotation or both");
        sub->add_option("--trials", opt.trials, "trials per magnitude")->capture_default_str();
        sub->add_option("--out", opt.out, "output file (default: stdout)");
        sub->add_option("--in", opt.in, "input correlation JSON (eval)");
        sub->add_option("--format", opt.format, "json, csv or text");
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        print_error("usage", e.what());
        return kExitInput;
    }

    try {
        for (std::size_t k = 0; k < specs.size(); k++) {
            if (subs[k]->parsed()) {
                if (opt.format.empty()) {
                    opt.format = specs[k].default_format;
                }
                return specs[k].run(opt);
            }
        }
    } catch (const DomainError &e) {
        print_error("domain", e.what());
        return kExitInput;
    } catch (const PreconditionError &e) {
        print_error("precondition", e.what(), e.residual);
        return kExitInput;
    } catch (const StructuralError &e) {
        print_error("structural", e.what());
        return kExitOther;
    } catch (const ResourceError &e) {
        print_error("resource", e.what());
        return kExitOther;
    } catch (const std::exception &e) {
        print_error("internal", e.what());
        return kExitOther;
    }
    return kExitOther;
}
