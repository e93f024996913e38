#include "ravkit/cli.hpp"

#include "ravkit/critique.hpp"
#include "ravkit/errors.hpp"
#include "ravkit/ingest/applicants_csv.hpp"
#include "ravkit/ingest/scan_xml.hpp"
#include "ravkit/ingest/scope_file.hpp"
#include "ravkit/report.hpp"
#include "ravkit/symbolic/expression_parser.hpp"
#include "ravkit/symbolic/rav.hpp"
#include "json_output.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace ravkit::cli {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw InputError("error while reading '" + path + "'");
    return buffer.str();
}

ingest::ScopeDocument read_scope_document(const std::string& path)
{
    try {
        return ingest::parse_scope_document(read_file(path));
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

report::Format format_of(const std::string& name)
{
    auto f = report::parse_format(name);
    if (!f) throw InputError("unknown format '" + name + "'");
    return *f;
}

std::uint64_t parse_seed(const std::string& text, const std::string& source)
{
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw InputError(source + ": seed must be a non-negative integer, got '" + text + "'");
    }
    return v;
}

struct Options {
    std::string format = "text";

    std::string scope_file;

    std::string xml_file;
    std::string merge_file;
    std::string emit = "report";

    std::vector<std::string> aggregate_files;

    std::string csv_file;
    std::string mode = "average";

    std::string symbolic_file;
    std::string eval;
    std::string units = "file";

    std::string kind = "all";
    std::optional<std::string> seed;
    Count bounds = 3;
    double epsilon = 1e-9;
    std::size_t max_findings = critique::kDefaultMaxFindings;
};

int cmd_rav(const Options& o, std::ostream& out)
{
    const report::Format format = format_of(o.format);
    const ingest::ScopeDocument doc = read_scope_document(o.scope_file);
    if (doc.scopes.empty()) throw InputError(o.scope_file + ": no scopes");
    std::vector<std::pair<Scope, RavBreakdown>> items;
    for (const Scope& s : doc.scopes) items.emplace_back(s, actual_security(s));
    out << report::render_reports(items, format);
    return kExitOk;
}

int cmd_import(const Options& o, std::ostream& out, std::ostream& err, bool verbose)
{
    const report::Format format = format_of(o.format);
    if (o.emit != "scope" && o.emit != "report") throw InputError("--emit must be 'scope' or 'report'");
    ingest::ScanImport scan;
    try {
        scan = ingest::import_scan_xml(read_file(o.xml_file));
    } catch (const InputError& e) {
        throw InputError(o.xml_file + ": " + e.what());
    }
    if (verbose) {
        const auto& d = scan.diagnostics;
        err << "scan: " << d.hosts_total << " hosts (" << d.hosts_up << " up), " << d.ports_open << " open ports, "
            << d.ports_not_open << " other ports, " << d.ignored_elements << " ignored elements\n";
    }

    ingest::ScopeDocument doc;
    Scope scope;
    scope.id = "scan";
    if (!o.merge_file.empty()) {
        doc = read_scope_document(o.merge_file);
        if (doc.scopes.size() != 1) {
            throw InputError(o.merge_file + ": --merge needs exactly one scope, found " +
                             std::to_string(doc.scopes.size()));
        }
        scope = doc.scopes.front();
    }
    scope.porosity = scan.porosity;
    doc.scopes = {scope};

    if (o.emit == "scope") {
        out << ingest::render_scope_document(doc);
    } else {
        out << report::render_report(actual_security(scope), scope, format);
    }
    return kExitOk;
}

int cmd_aggregate(const Options& o, std::ostream& out)
{
    const report::Format format = format_of(o.format);
    std::vector<Scope> scopes;
    std::vector<std::string> sources;
    for (const std::string& path : o.aggregate_files) {
        for (Scope& s : read_scope_document(path).scopes) {
            sources.push_back(s.id);
            scopes.push_back(std::move(s));
        }
    }
    const Scope total = aggregate_scopes(scopes);
    out << report::render_report(actual_security(total), total, format, sources);
    return kExitOk;
}

int cmd_trust(const Options& o, std::ostream& out, std::ostream& err)
{
    const report::Format format = format_of(o.format);
    auto mode = trust::parse_combine_mode(o.mode);
    if (!mode) throw InputError("unknown mode '" + o.mode + "'");
    ingest::ApplicantImport imported;
    try {
        imported = ingest::parse_applicants_csv(read_file(o.csv_file));
    } catch (const InputError& e) {
        throw InputError(o.csv_file + ": " + e.what());
    }
    if (!imported.errors.empty()) {
        for (const auto& e : imported.errors) err << o.csv_file << ": row " << e.row << ": " << e.message << '\n';
        return kExitInput;
    }
    if (imported.records.empty()) throw InputError(o.csv_file + ": no applicant records");

    std::vector<report::TrustEntry> entries;
    for (const auto& record : imported.records) {
        report::TrustEntry entry;
        entry.record = record;
        for (const auto& r : trust::consistency_ratios(record)) entry.ratios.push_back(r);
        const std::vector<trust::RuleResult> rules = {trust::consistency_score(record, *mode),
                                                      trust::porosity_rule(record),
                                                      trust::unmonitored_hours_rule(record)};
        entry.ratios.insert(entry.ratios.end(), rules.begin(), rules.end());
        try {
            entry.score = trust::trust_combine(rules, *mode);
        } catch (const DomainError& e) {
            throw DomainError("record " + record.id + ": " + e.what());
        }
        entries.push_back(std::move(entry));
    }
    out << report::render_trust_report(entries, format);
    return kExitOk;
}

int cmd_symbolic(const Options& o, std::ostream& out)
{
    const report::Format format = format_of(o.format);
    const ingest::ScopeDocument doc = read_scope_document(o.symbolic_file);
    if (doc.scopes.empty()) throw InputError(o.symbolic_file + ": no scopes");

    symbolic::UnitMap units;
    if (o.units == "file") {
        units = doc.units.empty() ? symbolic::default_unit_map() : doc.units;
    } else if (o.units == "default") {
        units = symbolic::default_unit_map();
    } else if (o.units == "full") {
        units = symbolic::full_unit_map();
    } else {
        throw InputError("--units must be 'file', 'default' or 'full'");
    }

    symbolic::Assignment assignment = symbolic::unit_assignment(units);
    if (!o.eval.empty()) {
        for (const auto& [name, value] : symbolic::parse_assignment(o.eval)) {
            if (assignment.count(name) == 0) throw InputError("--eval: '" + name + "' is not a unit variable");
            assignment[name] = value;
        }
    }

    json scopes = json::array();
    std::ostringstream text;
    for (const Scope& scope : doc.scopes) {
        const symbolic::SymbolicRav r = symbolic::symbolic_rav(scope, units);
        const double value = symbolic::evaluate(r.actsec, assignment);
        std::vector<std::pair<std::string, std::string>> rows = {
            {"opsec_sum", r.opsec_sum.render()},   {"lc_sum", r.lc_sum.render()},
            {"mc_sum", r.mc_sum.render()},         {"mc_class_a", r.mc_class_a.render()},
            {"mc_class_b", r.mc_class_b.render()}, {"mc_vg", r.mc_vg.render()},
        };
        for (LimitationKind k : kAllLimitationKinds) {
            rows.emplace_back("weight." + std::string(limitation_name(k)), r.weights[index_of(k)].render());
        }
        rows.emplace_back("seclim_sum", r.seclim_sum.render());
        rows.emplace_back("opsec_argument", r.opsec_argument.render());
        rows.emplace_back("fc_argument", r.fc_argument.render());
        rows.emplace_back("seclim_argument", r.seclim_argument.render());
        rows.emplace_back("actsec", r.actsec.render());

        json at = json::object();
        std::string at_text;
        for (const auto& [name, v] : assignment) {
            at[name] = to_string(v);
            at_text += (at_text.empty() ? "" : ",") + name + "=" + to_string(v);
        }
        json derivation = json::object();
        for (const auto& [name, expr] : rows) derivation[name] = expr;
        scopes.push_back(json{
            {"input", ingest::scope_to_json(scope)},
            {"units", units},
            {"derivation", derivation},
            {"assignment", at},
            {"value", detail::fixed6(value)},
        });

        if (scopes.size() > 1) text << '\n';
        text << "symbolic derivation for scope " << scope.id << "\n";
        for (const auto& [kind, var] : units) text << "  unit " << kind << " = " << var << '\n';
        for (const auto& [name, expr] : rows) text << name << " = " << expr << '\n';
        text << "at " << at_text << '\n';
        text << "ActSec = " << format_fixed6(value) << '\n';
    }
    if (format == report::Format::json) {
        const json document{{"schema", std::string(report::kReportSchema)}, {"kind", "symbolic"}, {"scopes", scopes}};
        out << detail::dump(document);
    } else {
        out << text.str();
    }
    return kExitOk;
}

int cmd_demo(const Options& o, std::ostream& out)
{
    const report::Format format = format_of(o.format);
    static const std::vector<std::string> kinds = {"permutation", "collision", "formula", "balance", "trust", "all"};
    if (std::find(kinds.begin(), kinds.end(), o.kind) == kinds.end()) throw InputError("unknown demo kind '" + o.kind + "'");

    std::uint64_t seed = 0;
    if (o.seed) {
        seed = parse_seed(*o.seed, "--seed");
    } else if (const char* env = std::getenv("RAVKIT_SEED"); env != nullptr) {
        seed = parse_seed(env, "RAVKIT_SEED");
    }

    const bool all = o.kind == "all";
    std::vector<critique::CritiqueFinding> findings;
    std::string summary;
    if (all || o.kind == "permutation") {
        const Scope toy = critique::toy_scope();
        findings.push_back(critique::permutation_demo(toy, ControlClass::authentication, ControlClass::continuity));
        findings.push_back(critique::permutation_demo(toy, ControlClass::authentication, ControlClass::alarm));
        Scope lopsided = toy;
        lopsided.id = "toy-no-concerns";
        lopsided.limitations[LimitationKind::concern] = 0;
        findings.push_back(critique::permutation_demo(lopsided, ControlClass::authentication, ControlClass::alarm));
    }
    if (all || o.kind == "formula") findings.push_back(critique::formula_discrepancy_demo());
    if (all || o.kind == "balance") findings.push_back(critique::balance_demo());
    if (all || o.kind == "trust") {
        trust::ApplicantRecord record;
        record.id = "applicant";
        record.months_unemployed = 1;
        record.months_eligible = 5;
        record.age_years = 30;
        record.criminal_offenses_known = 1;
        record.past_employer_count = 4;
        record.references = {{"employer-1", trust::ReferencePolarity::negative},
                             {"employer-2", trust::ReferencePolarity::positive},
                             {"employer-3", trust::ReferencePolarity::positive},
                             {"employer-4", trust::ReferencePolarity::positive}};
        findings.push_back(critique::trust_aggregation_demo(record));
        findings.push_back(critique::liability_equivalence_demo(1e-3));
        findings.push_back(critique::liability_equivalence_demo(0.0));
    }
    if (all || o.kind == "collision") {
        const auto search =
            critique::collision_search(critique::CollisionBounds::uniform(o.bounds), o.epsilon, seed, o.max_findings);
        findings.insert(findings.end(), search.findings.begin(), search.findings.end());
        const auto& s = search.stats;
        summary = "collision search: " + std::to_string(s.configurations) + " configurations, " +
                  std::to_string(s.evaluations) + " evaluations, " + std::to_string(s.collision_classes) +
                  " collision classes, " + std::to_string(s.nontrivial_classes) + " across different structures\n";
    }

    if (format == report::Format::json) {
        out << critique::render_findings(findings);
    } else {
        out << summary << critique::render_findings_text(findings);
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Attack-surface (rav) scoring, trust rules and critique checks", "ravkit"};
    app.require_subcommand(1);
    Options o;
    bool verbose = false;

    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    };

    CLI::App* rav = app.add_subcommand("rav", "Compute Actual Security for every scope in a scope file");
    rav->add_option("scope-file", o.scope_file)->required();
    add_format(rav);

    CLI::App* imp = app.add_subcommand("import-nmap", "Count visibility and access from scanner XML");
    imp->add_option("xml", o.xml_file)->required();
    imp->add_option("--merge", o.merge_file, "Scope file supplying labels, controls and limitations");
    imp->add_option("--emit", o.emit, "Emit a scope file or a report")->check(CLI::IsMember({"scope", "report"}));
    imp->add_flag("--verbose", verbose, "Print scan diagnostics to stderr");
    add_format(imp);

    CLI::App* agg = app.add_subcommand("aggregate", "Sum every scope of the given files into one");
    agg->add_option("scope-files", o.aggregate_files)->required();
    add_format(agg);

    CLI::App* tr = app.add_subcommand("trust", "Score applicant records with the trust rules");
    tr->add_option("applicants", o.csv_file)->required();
    tr->add_option("--mode", o.mode, "How rule values are combined")->check(CLI::IsMember({"average", "sum", "max"}));
    add_format(tr);

    CLI::App* sym = app.add_subcommand("symbolic", "Derive Actual Security over formal units");
    sym->add_option("scope-file", o.symbolic_file)->required();
    sym->add_option("--eval", o.eval, "Assignment such as h=2,p=1/2 (unlisted units are 1)");
    sym->add_option("--units", o.units, "Unit map: file, default or full")
        ->check(CLI::IsMember({"file", "default", "full"}));
    add_format(sym);

    CLI::App* demo = app.add_subcommand("demo", "Run the critique demonstrations");
    demo->add_option("--kind", o.kind, "Which demonstration")
        ->check(CLI::IsMember({"permutation", "collision", "formula", "balance", "trust", "all"}));
    demo->add_option("--seed", o.seed, "Seed for choosing reported collisions (default: RAVKIT_SEED or 0)");
    demo->add_option("--bounds", o.bounds, "Largest count enumerated per field")->check(CLI::Range(0, 10));
    demo->add_option("--epsilon", o.epsilon, "Collision tolerance")->check(CLI::NonNegativeNumber);
    demo->add_option("--max-findings", o.max_findings, "Collision findings to report");
    add_format(demo);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitInput;
    }

    try {
        if (*rav) return cmd_rav(o, out);
        if (*imp) return cmd_import(o, out, err, verbose);
        if (*agg) return cmd_aggregate(o, out);
        if (*tr) return cmd_trust(o, out, err);
        if (*sym) return cmd_symbolic(o, out);
        if (*demo) return cmd_demo(o, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }
    err << app.help();
    return kExitInput;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

}  // namespace ravkit::cli
