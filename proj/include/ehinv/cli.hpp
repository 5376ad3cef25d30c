#pragma once

// Command-line surface: sumset, classify, gaps, verify.
// Exit codes: 0 clean, 1 counterexamples found by verify, 2 usage or
// hypothesis errors.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "classify.hpp"
#include "cli_config.hpp"
#include "error.hpp"
#include "gaps.hpp"
#include "sets.hpp"
#include "sumset.hpp"
#include "verify/checkpoint.hpp"
#include "verify/report.hpp"
#include "verify/sweep.hpp"

namespace ehinv::cli {

inline constexpr int kExitClean = 0;
inline constexpr int kExitCounterexample = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

using AnySet = std::variant<IntSet, ModSet>;

/// "{...}" in Z, or in Z/pZ when --mod is given; "mod p: {...}" always modular.
inline AnySet parse_operand(const std::string& literal, std::optional<long long> mod) {
    const auto trimmed = ehinv::detail::trim(literal);
    if (trimmed.substr(0, 3) == "mod") {
        ModSet s = parse_mod_set(trimmed);
        if (mod && s.modulus() != *mod) throw ModulusMismatch("literal modulus disagrees with --mod");
        return s;
    }
    if (!mod) return parse_int_set(trimmed);
    if (!is_prime(*mod)) throw PreconditionError("modulus " + std::to_string(*mod) + " is not prime");
    std::vector<Element> residues = parse_elements(trimmed);
    for (Element r : residues)
        if (r < 0 || r >= *mod)
            throw ParseError("residue " + std::to_string(r) + " out of range for modulus " + std::to_string(*mod));
    return ModSet(*mod, std::move(residues));
}

inline std::string literal(const AnySet& s) {
    return std::visit([](const auto& x) { return format_elements(x.elements()); }, s);
}

inline nlohmann::json witness_json(const PairClassification& c) {
    if (c.ap) return {{"start", c.ap->start}, {"diff", c.ap->difference}, {"len", c.ap->length}};
    if (c.bi_pair) return {{"a", c.bi_pair->a}, {"c", c.bi_pair->c}, {"d", c.bi_pair->d}};
    return nullptr;
}

inline nlohmann::json classification_json(const PairClassification& c) {
    return {{"critical", c.critical}, {"case_tag", to_string(c.case_tag)}, {"witness", witness_json(c)}};
}

inline nlohmann::json profile_json(const GapProfile& g) {
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& b : g.blocks) blocks.push_back({b.first, b.last});
    return {{"p", g.modulus},         {"d", g.generator}, {"mode", to_string(g.mode)},
            {"exponents", g.exponents}, {"blocks", blocks}, {"longest_gap", g.longest_gap}};
}

inline std::string blocks_text(const GapProfile& g) {
    std::string out;
    for (const auto& b : g.blocks) {
        if (!out.empty()) out += ' ';
        out += "[" + std::to_string(b.first) + "," + std::to_string(b.last) + "]";
    }
    return out;
}

inline std::string csv_quote(const std::string& s) { return "\"" + s + "\""; }

} // namespace detail

struct SumsetArgs {
    std::string a, b;
    std::optional<long long> mod;
};

inline int cmd_sumset(const SumsetArgs& args, const CliConfig& cfg, std::ostream& out) {
    const auto a = detail::parse_operand(args.a, args.mod);
    const auto b = detail::parse_operand(args.b, args.mod);
    if (a.index() != b.index()) throw ModulusMismatch("one operand is modular and the other is not");

    std::string full, restricted;
    std::size_t full_size = 0, restricted_size = 0;
    std::int64_t cd = 0, eh = 0;
    std::optional<bool> critical;
    std::visit(
        [&](const auto& x) {
            using Set = std::decay_t<decltype(x)>;
            const Set& y = std::get<Set>(b);
            const auto s = sumset(x, y);
            const auto r = restricted_sumset(x, y);
            full = format_elements(s.elements());
            restricted = format_elements(r.elements());
            full_size = s.size();
            restricted_size = r.size();
            const GroupContext ctx = context_of(x);
            if constexpr (std::is_same_v<Set, ModSet>) require_same_modulus(x, y);
            cd = cd_lower_bound(static_cast<std::int64_t>(x.size()), static_cast<std::int64_t>(y.size()), ctx);
            eh = eh_lower_bound(static_cast<std::int64_t>(x.size()), static_cast<std::int64_t>(y.size()), ctx);
            if (x.size() >= 2 && y.size() >= 2) critical = is_critical_pair(x, y);
        },
        a);

    switch (cfg.format) {
    case OutputFormat::Json: {
        nlohmann::json j{{"A", detail::literal(a)},
                         {"B", detail::literal(b)},
                         {"sumset", full},
                         {"sumset_size", full_size},
                         {"restricted_sumset", restricted},
                         {"restricted_sumset_size", restricted_size},
                         {"cd_lower_bound", cd},
                         {"eh_lower_bound", eh},
                         {"critical", critical ? nlohmann::json(*critical) : nlohmann::json(nullptr)}};
        if (args.mod || std::holds_alternative<ModSet>(a)) j["mod"] = std::get<ModSet>(a).modulus();
        out << j.dump(2) << '\n';
        break;
    }
    case OutputFormat::Csv:
        out << "A,B,sumset,sumset_size,restricted_sumset,restricted_sumset_size,cd_lower_bound,eh_lower_bound,critical\n";
        out << detail::csv_quote(detail::literal(a)) << ',' << detail::csv_quote(detail::literal(b)) << ','
            << detail::csv_quote(full) << ',' << full_size << ',' << detail::csv_quote(restricted) << ','
            << restricted_size << ',' << cd << ',' << eh << ','
            << (critical ? (*critical ? "true" : "false") : "") << '\n';
        break;
    case OutputFormat::Text:
        out << "A          " << detail::literal(a) << '\n'
            << "B          " << detail::literal(b) << '\n'
            << "A+B        " << full << "  (size " << full_size << ")\n"
            << "A+^B       " << restricted << "  (size " << restricted_size << ")\n"
            << "CD bound   " << cd << '\n'
            << "EH bound   " << eh << '\n'
            << "critical   " << (critical ? (*critical ? "true" : "false") : "n/a (needs |A|,|B| >= 2)") << '\n';
        break;
    }
    return kExitClean;
}

struct ClassifyArgs {
    std::string a, b;
    std::optional<long long> mod;
    bool check = false;
};

inline int cmd_classify(const ClassifyArgs& args, const CliConfig& cfg, std::ostream& out) {
    const auto a = detail::parse_operand(args.a, args.mod);
    const auto b = detail::parse_operand(args.b, args.mod);
    if (a.index() != b.index()) throw ModulusMismatch("one operand is modular and the other is not");

    PairClassification verdict;
    std::optional<bool> oracle;
    std::visit(
        [&](const auto& x) {
            using Set = std::decay_t<decltype(x)>;
            const Set& y = std::get<Set>(b);
            verdict = predict_critical(x, y);
            if (args.check) oracle = is_critical_pair(x, y);
        },
        a);

    switch (cfg.format) {
    case OutputFormat::Json: {
        nlohmann::json j = detail::classification_json(verdict);
        j["A"] = detail::literal(a);
        j["B"] = detail::literal(b);
        if (oracle) {
            j["oracle_critical"] = *oracle;
            j["agrees"] = *oracle == verdict.critical;
        }
        out << j.dump(2) << '\n';
        break;
    }
    case OutputFormat::Csv:
        out << "A,B,critical,case_tag,witness" << (oracle ? ",oracle_critical" : "") << '\n';
        out << detail::csv_quote(detail::literal(a)) << ',' << detail::csv_quote(detail::literal(b)) << ','
            << (verdict.critical ? "true" : "false") << ',' << to_string(verdict.case_tag) << ','
            << detail::csv_quote(describe(verdict));
        if (oracle) out << ',' << (*oracle ? "true" : "false");
        out << '\n';
        break;
    case OutputFormat::Text:
        out << "classification  " << describe(verdict) << '\n'
            << "critical        " << (verdict.critical ? "true" : "false") << '\n';
        if (oracle)
            out << "oracle          " << (*oracle ? "true" : "false") << '\n'
                << "agrees          " << (*oracle == verdict.critical ? "yes" : "NO") << '\n';
        break;
    }
    return kExitClean;
}

struct GapsArgs {
    std::string set;
    std::optional<long long> generator;
    std::string mode = "linear";
};

inline int cmd_gaps(const GapsArgs& args, const CliConfig& cfg, std::ostream& out) {
    const ModSet x = parse_mod_set(args.set);
    const GapMode mode = parse_gap_mode(args.mode);
    std::vector<GapProfile> profiles;
    if (args.generator)
        profiles.push_back(exponent_profile(x, *args.generator, mode));
    else
        profiles = longest_gap_over_generators(x, mode);

    switch (cfg.format) {
    case OutputFormat::Json: {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& g : profiles) arr.push_back(detail::profile_json(g));
        out << (args.generator ? arr.at(0) : arr).dump(2) << '\n';
        break;
    }
    case OutputFormat::Csv:
        out << "p,d,mode,longest_gap,exponents,blocks\n";
        for (const auto& g : profiles)
            out << g.modulus << ',' << g.generator << ',' << to_string(g.mode) << ',' << g.longest_gap << ','
                << detail::csv_quote(format_elements(g.exponents)) << ',' << detail::csv_quote(detail::blocks_text(g))
                << '\n';
        break;
    case OutputFormat::Text:
        out << std::left << std::setw(6) << "p" << std::setw(6) << "d" << std::setw(8) << "mode" << std::setw(13)
            << "longest_gap" << std::setw(24) << "exponents"
            << "blocks" << '\n';
        for (const auto& g : profiles)
            out << std::left << std::setw(6) << g.modulus << std::setw(6) << g.generator << std::setw(8)
                << to_string(g.mode) << std::setw(13) << g.longest_gap << std::setw(24)
                << format_elements(g.exponents) << detail::blocks_text(g) << '\n';
        break;
    }
    return kExitClean;
}

struct VerifyArgs {
    std::string theorem;
    std::optional<int> window;
    std::optional<int> mod;
    int min_size = 2;
    int max_size = 0;
    std::string normalize = "auto";
    std::string gap_mode = "both";
    bool search = false;
    std::string checkpoint;
    std::string resume;
    std::uint64_t budget = verify::kDefaultMaxPairs;
    std::string csv_out;
};

inline std::string verify_text(const verify::VerifyReport& r) {
    std::ostringstream out;
    const auto& s = r.spec;
    out << "theorem          " << to_string(s.selector) << (s.search ? " (search)" : "") << '\n';
    out << "universe         " << (s.modular() ? "Z/" + std::to_string(s.prime) + "Z" : "Z window " + std::to_string(s.window))
        << ", sizes " << s.min_size << ".." << s.upper_size() << (s.normalized() ? ", translation-normalized" : "")
        << '\n';
    out << "enumerated       " << r.enumerated << '\n';
    out << "after normalize  " << r.tally.visited << '\n';
    out << "checked          " << r.checked() << '\n';
    out << "agreements       " << r.agreements() << '\n';
    out << "counterexamples  " << r.counterexample_count() << '\n';
    for (verify::CheckId id : verify::checks_for(s)) {
        const auto& t = r.tally.checks[static_cast<std::size_t>(id)];
        out << "  " << std::left << std::setw(28) << verify::check_name(id) << t.agreements << "/" << t.checked
            << '\n';
    }
    if (s.modular())
        out << "boundary band    " << r.tally.band.agreements << "/" << r.tally.band.checked << " agree, "
            << r.tally.band.critical << " critical\n";
    if (s.selector == verify::Selector::T6 || s.selector == verify::Selector::T7)
        out << "observations     critical_in_hypothesis=" << r.tally.observations[0]
            << " nonstandard_critical=" << r.tally.observations[1] << '\n';
    for (const auto& cx : r.tally.counterexamples)
        out << "  counterexample [" << verify::check_name(cx.check) << "] A="
            << format_elements(verify::mask_elements(cx.a)) << " B=" << format_elements(verify::mask_elements(cx.b))
            << " oracle=" << cx.oracle << " predicted=" << cx.predicted << " |A+^B|=" << cx.sumset_size << '\n';
    out << "elapsed_ms       " << r.elapsed_ms << '\n';
    out << "result           " << (s.search ? "REPORT" : (r.failed() ? "FAIL" : "PASS")) << '\n';
    return out.str();
}

inline int cmd_verify(const VerifyArgs& args, const CliConfig& cfg, std::ostream& out) {
    verify::SweepSpec base;
    base.selector = verify::parse_selector(args.theorem);
    base.min_size = args.min_size;
    base.max_size = args.max_size;
    if (args.normalize == "on")
        base.normalize = true;
    else if (args.normalize == "off")
        base.normalize = false;
    else if (args.normalize != "auto")
        throw PreconditionError("--normalize must be auto, on or off");
    base.gap_modes = verify::parse_gap_modes(args.gap_mode);
    base.search = args.search;
    base.workers = cfg.workers;
    base.counterexample_cap = cfg.counterexample_cap;
    base.max_pairs = args.budget;

    // The budget gate runs before selector/universe compatibility so an
    // oversized request is reported as such.
    std::vector<verify::SweepSpec> specs;
    if (args.window && args.mod) throw PreconditionError("pass either --window or --mod, not both");
    if (args.mod) {
        base.prime = *args.mod;
        specs.push_back(base);
    } else if (args.window || verify::is_integer_selector(base.selector)) {
        base.window = args.window.value_or(cfg.window);
        specs.push_back(base);
    } else {
        for (int p : cfg.primes) {
            verify::SweepSpec s = base;
            s.prime = p;
            specs.push_back(s);
        }
    }
    for (const auto& s : specs)
        if (s.universe() >= 1 && s.universe() <= 62) verify::check_budget(s);
    if ((!args.checkpoint.empty() || !args.resume.empty()) && specs.size() != 1)
        throw PreconditionError("--checkpoint/--resume need a single sweep; pass --mod");
    for (auto& s : specs) {
        s.checkpoint_path = args.checkpoint;
        if (s.checkpoint_path.empty() && args.resume.empty() && !cfg.checkpoint_dir.empty()) {
            std::filesystem::create_directories(cfg.checkpoint_dir);
            const std::string universe = s.modular() ? "mod" + std::to_string(s.prime) : "window" + std::to_string(s.window);
            s.checkpoint_path =
                (std::filesystem::path(cfg.checkpoint_dir) / (std::string(to_string(s.selector)) + "-" + universe + ".ckpt"))
                    .string();
        }
        verify::validate(s);
        verify::check_budget(s);
    }

    std::vector<verify::VerifyReport> reports;
    for (const auto& s : specs) {
        verify::SweepControl control;
        control.resume_path = args.resume;
        reports.push_back(verify::run_sweep(s, control).report);
    }

    if (!args.csv_out.empty()) {
        std::ofstream csv(args.csv_out);
        if (!csv) throw PreconditionError("cannot write '" + args.csv_out + "'");
        for (const auto& r : reports) csv << verify::to_csv(r);
    }

    switch (cfg.format) {
    case OutputFormat::Json:
        if (reports.size() == 1) {
            out << verify::to_json(reports.front()).dump(2) << '\n';
        } else {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& r : reports) arr.push_back(verify::to_json(r));
            out << nlohmann::json{{"reports", arr}}.dump(2) << '\n';
        }
        break;
    case OutputFormat::Csv:
        for (std::size_t i = 0; i < reports.size(); ++i) {
            std::string csv = verify::to_csv(reports[i]);
            if (i != 0) csv.erase(0, csv.find('\n') + 1);
            out << csv;
        }
        break;
    case OutputFormat::Text:
        for (std::size_t i = 0; i < reports.size(); ++i) out << (i ? "\n" : "") << verify_text(reports[i]);
        break;
    }
    for (const auto& r : reports)
        if (r.failed()) return kExitCounterexample;
    return kExitClean;
}

/// Entry point shared by the executable and the tests.
inline int run_cli(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Restricted sumsets, critical pairs and exhaustive theorem sweeps", "ehinv"};
    app.require_subcommand(1);
    app.fallthrough();

    bool json = false;
    std::string format_flag, config_path, out_path;
    std::optional<int> workers;
    std::optional<std::size_t> cap;
    app.add_flag("--json", json, "Machine-readable JSON output");
    app.add_option("--format", format_flag, "Output format: text, json or csv");
    app.add_option("--config", config_path, "Config file (key = value lines)");
    app.add_option("--workers", workers, "Worker threads for verify");
    app.add_option("--out", out_path, "Write output to this file instead of stdout");

    SumsetArgs sumset_args;
    auto* sumset_cmd = app.add_subcommand("sumset", "Sumset, restricted sumset, bounds and criticality");
    sumset_cmd->add_option("A", sumset_args.a, "Set literal {e1,e2,...}")->required();
    sumset_cmd->add_option("B", sumset_args.b, "Set literal {e1,e2,...}")->required();
    sumset_cmd->add_option("--mod", sumset_args.mod, "Work in Z/pZ");

    ClassifyArgs classify_args;
    auto* classify_cmd = app.add_subcommand("classify", "Structural criticality verdict with witnesses");
    classify_cmd->add_option("A", classify_args.a)->required();
    classify_cmd->add_option("B", classify_args.b)->required();
    classify_cmd->add_option("--mod", classify_args.mod, "Work in Z/pZ");
    classify_cmd->add_flag("--check", classify_args.check, "Also print the brute-force verdict");

    GapsArgs gaps_args;
    auto* gaps_cmd = app.add_subcommand("gaps", "Exponent profile and longest gap of a set mod p");
    gaps_cmd->add_option("X", gaps_args.set, "Modular literal 'mod p: {r1,...}'")->required();
    gaps_cmd->add_option("--gen", gaps_args.generator, "Generator d (default: all of 1..p-1)");
    gaps_cmd->add_option("--mode", gaps_args.mode, "linear or cyclic");

    VerifyArgs verify_args;
    auto* verify_cmd = app.add_subcommand("verify", "Exhaustive theorem sweep against the brute-force oracle");
    verify_cmd->add_option("--theorem", verify_args.theorem, "T1..T7, KAROLYI or LEMMAS")->required();
    verify_cmd->add_option("--window", verify_args.window, "Z universe {0..N-1}");
    verify_cmd->add_option("--mod", verify_args.mod, "Z/pZ universe");
    verify_cmd->add_option("--min-size", verify_args.min_size, "Smallest |A|, |B| enumerated");
    verify_cmd->add_option("--max-size", verify_args.max_size, "Largest |A|, |B| enumerated");
    verify_cmd->add_option("--normalize", verify_args.normalize, "auto, on or off");
    verify_cmd->add_option("--gap-mode", verify_args.gap_mode, "T6 gap mode: linear, cyclic or both");
    verify_cmd->add_flag("--search", verify_args.search, "Report-only mode beyond the proven hypotheses");
    verify_cmd->add_option("--checkpoint", verify_args.checkpoint, "Checkpoint file to write");
    verify_cmd->add_option("--resume", verify_args.resume, "Resume from (and keep writing) this checkpoint");
    verify_cmd->add_option("--cap", cap, "Counterexample list cap");
    verify_cmd->add_option("--budget", verify_args.budget, "Refuse sweeps estimated above this many pairs");
    verify_cmd->add_option("--csv", verify_args.csv_out, "Also write counterexamples as CSV here");

    std::vector<std::string> args(argv.begin() + (argv.empty() ? 0 : 1), argv.end());
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitClean : kExitUsage;
    }

    std::ostringstream buffer;
    try {
        ConfigLayer flags;
        if (!format_flag.empty()) flags.format = parse_format(format_flag);
        if (json) flags.format = OutputFormat::Json;
        flags.workers = workers;
        flags.counterexample_cap = cap;
        const ConfigLayer file = config_path.empty() ? ConfigLayer{} : load_config_file(config_path);
        const CliConfig cfg = resolve_config(file, flags);

        int code = kExitClean;
        if (*sumset_cmd)
            code = cmd_sumset(sumset_args, cfg, buffer);
        else if (*classify_cmd)
            code = cmd_classify(classify_args, cfg, buffer);
        else if (*gaps_cmd)
            code = cmd_gaps(gaps_args, cfg, buffer);
        else if (*verify_cmd)
            code = cmd_verify(verify_args, cfg, buffer);

        if (out_path.empty()) {
            out << buffer.str();
        } else {
            std::ofstream file_out(out_path);
            if (!file_out) throw PreconditionError("cannot write '" + out_path + "'");
            file_out << buffer.str();
        }
        return code;
    } catch (const HypothesisViolation& e) {
        err << "error: hypothesis violated: " << e.what() << '\n';
    } catch (const verify::BudgetExceeded& e) {
        err << "error: " << e.what() << '\n';
    } catch (const verify::CheckpointError& e) {
        err << "error: " << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
    }
    return kExitUsage;
}

} // namespace ehinv::cli
