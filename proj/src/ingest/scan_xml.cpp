#include "ravkit/ingest/scan_xml.hpp"

#include "ravkit/errors.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <algorithm>
#include <sstream>
#include <string>

namespace ravkit::ingest {

namespace pt = boost::property_tree;

namespace {

constexpr std::string_view kAttributes = "<xmlattr>";
constexpr std::string_view kComment = "<xmlcomment>";

bool is_element(const std::string& key)
{
    return key != kAttributes && key != kComment;
}

std::string attribute(const pt::ptree& node, const std::string& name)
{
    return node.get<std::string>(std::string(kAttributes) + "." + name, "");
}

Count count_elements(const pt::ptree& node)
{
    Count n = 0;
    for (const auto& [key, child] : node) {
        if (!is_element(key)) continue;
        n += 1 + count_elements(child);
    }
    return n;
}

void read_ports(const pt::ptree& ports, bool host_up, ScanImport& out)
{
    for (const auto& [key, child] : ports) {
        if (!is_element(key)) continue;
        if (key != "port") {
            out.diagnostics.ignored_elements += 1 + count_elements(child);
            continue;
        }
        bool open = false;
        for (const auto& [pkey, pchild] : child) {
            if (!is_element(pkey)) continue;
            if (pkey == "state") {
                open = open || attribute(pchild, "state") == "open";
            } else {
                out.diagnostics.ignored_elements += 1 + count_elements(pchild);
            }
        }
        if (open && host_up) {
            ++out.diagnostics.ports_open;
            ++out.porosity.access;
        } else {
            ++out.diagnostics.ports_not_open;
        }
    }
}

void read_host(const pt::ptree& host, ScanImport& out)
{
    ++out.diagnostics.hosts_total;
    bool up = false;
    for (const auto& [key, child] : host) {
        if (key == "status") up = attribute(child, "state") == "up";
    }
    if (up) {
        ++out.diagnostics.hosts_up;
        ++out.porosity.visibility;
    }
    for (const auto& [key, child] : host) {
        if (!is_element(key) || key == "status") continue;
        if (key == "ports") {
            read_ports(child, up, out);
        } else {
            out.diagnostics.ignored_elements += 1 + count_elements(child);
        }
    }
}

}  // namespace

ScanImport import_scan_xml(std::string_view text)
{
    pt::ptree tree;
    try {
        std::istringstream in{std::string(text)};
        pt::read_xml(in, tree);
    } catch (const pt::xml_parser_error& e) {
        throw InputError(std::string("malformed scan XML: ") + e.what());
    } catch (const pt::ptree_error& e) {
        throw InputError(std::string("malformed scan XML: ") + e.what());
    }

    const pt::ptree* root = nullptr;
    std::string root_name;
    for (const auto& [key, child] : tree) {
        if (!is_element(key)) continue;
        if (root != nullptr) throw InputError("scan XML has more than one root element");
        root = &child;
        root_name = key;
    }
    if (root == nullptr || root_name != "nmaprun") {
        throw InputError("scan XML root element must be <nmaprun>, found <" + root_name + ">");
    }
    const std::string version = attribute(*root, "xmloutputversion");
    if (version.empty()) throw InputError("scan XML lacks the xmloutputversion attribute");
    if (std::find(kSupportedScanVersions.begin(), kSupportedScanVersions.end(), version) ==
        kSupportedScanVersions.end()) {
        throw InputError("unsupported scan XML output version '" + version + "'");
    }

    ScanImport out;
    for (const auto& [key, child] : *root) {
        if (!is_element(key)) continue;
        if (key == "host") {
            read_host(child, out);
        } else {
            out.diagnostics.ignored_elements += 1 + count_elements(child);
        }
    }
    return out;
}

}  // namespace ravkit::ingest
