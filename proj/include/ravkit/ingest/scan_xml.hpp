#pragma once

#include "ravkit/metrics.hpp"

#include <array>
#include <string_view>

namespace ravkit::ingest {

/// Output-format versions of the scanner XML this importer understands.
inline constexpr std::array<std::string_view, 2> kSupportedScanVersions = {"1.04", "1.05"};

struct ScanDiagnostics {
    Count hosts_total = 0;
    Count hosts_up = 0;
    Count ports_open = 0;
    Count ports_not_open = 0;
    /// Elements outside the whitelist (nmaprun, host, status, ports, port, state).
    Count ignored_elements = 0;
};

struct ScanImport {
    PorosityCounts porosity;
    ScanDiagnostics diagnostics;
};

/// Reads an nmap-style XML report.
///
/// Whitelist: <nmaprun xmloutputversion=...>, <host>, <host><status state=...>,
/// <host><ports><port>, <port><state state=...>. Visibility counts hosts whose
/// status is "up"; access counts open ports on those hosts; trust is always 0.
/// Throws InputError for malformed XML, a different root element, or a missing
/// or unsupported xmloutputversion.
ScanImport import_scan_xml(std::string_view text);

}  // namespace ravkit::ingest
