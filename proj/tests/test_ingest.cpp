#include "helpers.hpp"
#include "ravkit/errors.hpp"
#include "ravkit/ingest/applicants_csv.hpp"
#include "ravkit/ingest/scan_xml.hpp"
#include "ravkit/ingest/scope_file.hpp"
#include "ravkit/trust.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ravkit;
using namespace ravkit::ingest;
using testing_support::fixture;
using testing_support::q;
using testing_support::slurp;

namespace {

std::string error_of(auto&& fn)
{
    try {
        fn();
    } catch (const InputError& e) {
        return e.what();
    }
    return "";
}

std::string wrap(const std::string& scope_body)
{
    return R"({"schema":"ravkit-scope/1","scopes":[)" + scope_body + "]}";
}

}  // namespace

TEST(ScopeFile, ReadsToyFixture)
{
    const auto scopes = parse_scope_file(slurp(fixture("toy.json")));
    ASSERT_EQ(scopes.size(), 1u);
    Scope expected = testing_support::toy();
    expected.vector = "internet";
    expected.index = "ip";
    EXPECT_EQ(scopes[0], expected);
}

TEST(ScopeFile, MissingCountsDefaultToZero)
{
    const auto scopes = parse_scope_file(wrap(R"({"id":"e"})"));
    ASSERT_EQ(scopes.size(), 1u);
    EXPECT_EQ(scopes[0].porosity, PorosityCounts{});
    EXPECT_EQ(scopes[0].controls.sum(), 0u);
    EXPECT_EQ(scopes[0].channel, Channel::data_network);
}

TEST(ScopeFile, RenderRoundTrips)
{
    std::mt19937_64 rng(11);
    ScopeDocument doc;
    for (int i = 0; i < 20; ++i) {
        Scope s = testing_support::random_scope(rng);
        s.id = "s" + std::to_string(i);
        s.channel = static_cast<Channel>(i % 6);
        s.vector = "v \"quoted\" ü";
        doc.scopes.push_back(s);
    }
    doc.units = symbolic::default_unit_map();
    const std::string text = render_scope_document(doc);
    EXPECT_EQ(parse_scope_document(text), doc);
    EXPECT_EQ(render_scope_document(parse_scope_document(text)), text);
    EXPECT_EQ(text.back(), '\n');
}

TEST(ScopeFile, ErrorsNameTheField)
{
    EXPECT_NE(error_of([] { parse_scope_file(wrap(R"({"id":"x","porosity":{"visibility":-1}})")); })
                  .find("scopes[0].porosity.visibility"),
              std::string::npos);
    EXPECT_NE(error_of([] { parse_scope_file(wrap(R"({"id":"x","controls":{"authentication":1.5}})")); })
                  .find("scopes[0].controls.authentication"),
              std::string::npos);
    EXPECT_NE(error_of([] { parse_scope_file(wrap(R"({"id":"x","controls":{"authorization":1}})")); })
                  .find("authorization"),
              std::string::npos);
    EXPECT_NE(error_of([] { parse_scope_file(wrap(R"({"id":"x","limitations":{"vulns":1}})")); })
                  .find("scopes[0].limitations"),
              std::string::npos);
    EXPECT_NE(error_of([] { parse_scope_file(wrap(R"({"id":"x","channel":"carrier-pigeon"})")); })
                  .find("scopes[0].channel"),
              std::string::npos);
    EXPECT_NE(error_of([] { parse_scope_file(wrap(R"({"porosity":{}})")); }).find("'id'"), std::string::npos);
    EXPECT_NE(error_of([] { parse_scope_file(wrap(R"({"id":""})")); }).find("scopes[0].id"), std::string::npos);
    EXPECT_NE(error_of([] { parse_scope_file(wrap(R"({"id":"a"},{"id":"a"})")); }).find("duplicate"),
              std::string::npos);
    EXPECT_NE(error_of([] { parse_scope_file(wrap(R"({"id":"a","extra":1})")); }).find("extra"),
              std::string::npos);
    EXPECT_NE(error_of([] { parse_scope_file(wrap(R"({"id":"a\u0001b"})")); }).find("control characters"),
              std::string::npos);
}

TEST(ScopeFile, DocumentLevelErrors)
{
    EXPECT_NE(error_of([] { parse_scope_file(R"({"schema":"other/1","scopes":[]})"); }).find("schema"),
              std::string::npos);
    EXPECT_NE(error_of([] { parse_scope_file(R"({"schema":"ravkit-scope/1"})"); }).find("scopes"),
              std::string::npos);
    EXPECT_NE(error_of([] { parse_scope_file(R"([])"); }).find("document"), std::string::npos);
    EXPECT_NE(error_of([] {
                  parse_scope_document(R"({"schema":"ravkit-scope/1","scopes":[],"units":{"visibility":"p","access":"p"}})");
              }).size(),
              0u);
}

TEST(ScopeFile, SyntaxErrorsReportByteOffset)
{
    const std::string msg = error_of([] { parse_scope_file(R"({"schema": "ravkit-scope/1", "scopes": [}")"); });
    EXPECT_NE(msg.find("byte 41"), std::string::npos) << msg;
    EXPECT_NE(error_of([] { parse_scope_file(""); }).find("byte"), std::string::npos);
}

TEST(ScanXml, OneHostOnePort)
{
    const ScanImport s = import_scan_xml(slurp(fixture("nmap_one_port.xml")));
    EXPECT_EQ(s.porosity, (PorosityCounts{1, 1, 0}));
    EXPECT_EQ(s.diagnostics.hosts_up, 1u);
    EXPECT_EQ(s.diagnostics.ports_open, 1u);
    EXPECT_GT(s.diagnostics.ignored_elements, 0u);
}

TEST(ScanXml, OnlyOpenPortsOnUpHostsCount)
{
    const ScanImport s = import_scan_xml(slurp(fixture("nmap_three_ports.xml")));
    EXPECT_EQ(s.porosity, (PorosityCounts{1, 3, 0}));
    EXPECT_EQ(s.diagnostics.hosts_total, 2u);
    EXPECT_EQ(s.diagnostics.ports_not_open, 1u);
}

TEST(ScanXml, NoHosts)
{
    const ScanImport s = import_scan_xml(slurp(fixture("nmap_no_hosts.xml")));
    EXPECT_EQ(s.porosity, PorosityCounts{});
}

TEST(ScanXml, OpenPortsOnDownHostsAreIgnored)
{
    const ScanImport s = import_scan_xml(
        R"(<nmaprun xmloutputversion="1.05"><host><status state="down"/><ports>)"
        R"(<port><state state="open"/></port></ports></host></nmaprun>)");
    EXPECT_EQ(s.porosity, PorosityCounts{});
}

TEST(ScanXml, Rejections)
{
    EXPECT_NE(error_of([] { import_scan_xml(R"(<nmaprun xmloutputversion="2.0"></nmaprun>)"); }).find("2.0"),
              std::string::npos);
    EXPECT_NE(error_of([] { import_scan_xml(R"(<nmaprun></nmaprun>)"); }).find("xmloutputversion"),
              std::string::npos);
    EXPECT_NE(error_of([] { import_scan_xml(R"(<scan xmloutputversion="1.05"/>)"); }).find("<nmaprun>"),
              std::string::npos);
    EXPECT_NE(error_of([] { import_scan_xml(R"(<nmaprun xmloutputversion="1.05"><host>)"); }).find("malformed"),
              std::string::npos);
    EXPECT_THROW(import_scan_xml(""), InputError);
}

TEST(ApplicantsCsv, Fixture)
{
    const ApplicantImport imp = parse_applicants_csv(slurp(fixture("applicants.csv")));
    EXPECT_TRUE(imp.errors.empty());
    ASSERT_EQ(imp.records.size(), 4u);
    EXPECT_EQ(imp.records[0].id, "conviction");
    EXPECT_EQ(*trust::consistency_ratios(imp.records[0])[1].value, q(1, 32));
    EXPECT_EQ(*trust::porosity_rule(imp.records[1]).value, q(39, 1250));
    EXPECT_FALSE(trust::consistency_ratios(imp.records[2])[1].defined());
    EXPECT_EQ(imp.records[2].hours_alone_per_day, q(15, 2));
    EXPECT_EQ(imp.records[3].id, "veteran, night shift");
    EXPECT_EQ(imp.records[3].hours_alone_per_day, q(15, 2));
    EXPECT_EQ(imp.records[3].references_with(trust::ReferencePolarity::negative), 1u);
    EXPECT_EQ(imp.records[3].references.size(), 4u);
}

TEST(ApplicantsCsv, DefaultsAndGeneratedIds)
{
    const auto imp = parse_applicants_csv("months_unemployed,months_eligible,criminal_offenses_known,age_years\n"
                                          "1,2,0,30\n\n3,4,0,40\r\n");
    ASSERT_EQ(imp.records.size(), 2u);
    EXPECT_EQ(imp.records[0].id, "row-1");
    EXPECT_EQ(imp.records[1].id, "row-2");
    EXPECT_EQ(imp.records[1].legal_adult_age, 18u);
    EXPECT_EQ(imp.records[1].age_years, 40u);
}

TEST(ApplicantsCsv, HeaderErrorsThrow)
{
    EXPECT_THROW(parse_applicants_csv(""), InputError);
    EXPECT_NE(error_of([] { parse_applicants_csv("months_unemployed,months_eligible,age_years\n"); })
                  .find("criminal_offenses_known"),
              std::string::npos);
    EXPECT_NE(error_of([] {
                  parse_applicants_csv("months_unemployed,months_eligible,criminal_offenses_known,age_years,shoe\n");
              }).find("shoe"),
              std::string::npos);
    EXPECT_NE(error_of([] {
                  parse_applicants_csv(
                      "months_unemployed,months_eligible,criminal_offenses_known,age_years,age_years\n");
              }).find("duplicate"),
              std::string::npos);
}

TEST(ApplicantsCsv, RowErrorsAreCollected)
{
    const auto imp = parse_applicants_csv(
        "id,months_unemployed,months_eligible,criminal_offenses_known,age_years,hours_alone_per_day\n"
        "ok,1,2,0,30,0\n"
        "short,1,2\n"
        "neg,-1,2,0,30,0\n"
        "over,5,2,0,30,0\n"
        "hours,0,2,0,30,9\n"
        "text,0,2,0,thirty,0\n"
        "fine,0,0,0,0,0\n");
    ASSERT_EQ(imp.records.size(), 2u);
    ASSERT_EQ(imp.errors.size(), 5u);
    EXPECT_EQ(imp.errors[0].row, 2u);
    EXPECT_NE(imp.errors[1].message.find("months_unemployed"), std::string::npos);
    EXPECT_EQ(imp.errors[4].row, 6u);
    EXPECT_NE(imp.errors[4].message.find("age_years"), std::string::npos);
}

TEST(ApplicantsCsv, SplitHonoursQuotes)
{
    EXPECT_EQ(split_csv_line(R"(a,"b,c","d ""e""",)"), (std::vector<std::string>{"a", "b,c", "d \"e\"", ""}));
    EXPECT_EQ(split_csv_line(""), (std::vector<std::string>{""}));
    EXPECT_THROW(split_csv_line(R"(a,"b)"), InputError);
}
