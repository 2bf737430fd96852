#pragma once

#include <filesystem>
#include <limits>
#include <string>
#include <vector>

namespace weinstein {

/// References an entry may carry: the mathematical statement checked, or
/// "plumbing" for artifact-level checks.
namespace refs {
inline constexpr const char* ball_measure = "ball measure closed form";
inline constexpr const char* indicator_transform = "ball indicator transform closed form";
inline constexpr const char* indicator_bounds = "ball indicator transform bounds";
inline constexpr const char* kernel_bound = "kernel modulus bound";
inline constexpr const char* transform_bound = "transform sup bound";
inline constexpr const char* radial_transform = "radial transform reduction";
inline constexpr const char* normalization = "translation kernel normalization";
inline constexpr const char* translation_integral = "translation integral";
inline constexpr const char* contraction = "translation contraction";
inline constexpr const char* product_formula = "translation product formula";
inline constexpr const char* young = "Young inequality";
inline constexpr const char* convolution_product = "convolution product formula";
inline constexpr const char* support = "translated indicator support";
inline constexpr const char* range = "translated indicator range";
inline constexpr const char* mass = "translated indicator mass";
inline constexpr const char* decay = "translated indicator decay";
inline constexpr const char* volume_ratio = "translated indicator volume ratio bound";
inline constexpr const char* weak_type = "maximal weak type (1,1)";
inline constexpr const char* strong_type = "maximal strong type (p,p)";
inline constexpr const char* domination = "maximal domination by ball averages";
inline constexpr const char* plancherel = "Plancherel identity";
inline constexpr const char* inversion = "transform inversion";
inline constexpr const char* eigenfunction = "kernel eigenfunction equation";
inline constexpr const char* vitali = "Vitali covering";
inline constexpr const char* plumbing = "plumbing";
}  // namespace refs

/// True for the strings in refs.
bool is_known_reference(const std::string& reference);

enum class Status { pass, fail, skipped, info };

const char* to_string(Status s);

/// One observed quantity. Asserted entries (pass/fail) satisfy
/// status == pass iff lower <= observed <= upper with observed finite.
struct ReportEntry {
  int criterion = 0;       ///< acceptance criterion number, 0 for auxiliary invariants
  std::string name;        ///< unique within a report
  std::string reference;   ///< the result being checked, or "plumbing"
  double observed = std::numeric_limits<double>::quiet_NaN();
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  Status status = Status::info;
  std::string grid;        ///< grid or sweep description
};

/// Asserted entry; status from the bounds.
ReportEntry bounded(int criterion, std::string name, std::string reference, double observed, double lower,
                    double upper, std::string grid);

/// Logged value, never failing.
ReportEntry logged(int criterion, std::string name, std::string reference, double observed, std::string grid);

/// Entry for a check not run under the current parameters.
ReportEntry skipped(int criterion, std::string name, std::string reference, std::string why);

struct VerificationReport {
  std::vector<ReportEntry> entries;

  void add(ReportEntry e) { entries.push_back(std::move(e)); }
  void append(const std::vector<ReportEntry>& more) { entries.insert(entries.end(), more.begin(), more.end()); }

  /// No entry has status fail.
  bool passed() const;
};

/// Problems found: unknown references, duplicate names, status
/// inconsistent with the bounds. Empty result means the report is clean.
std::vector<std::string> lint_report(const VerificationReport& report);

/// Writes report.json and report.csv into dir (created if absent). Output
/// depends only on the entries. Throws std::runtime_error naming the path.
void write_report(const VerificationReport& report, const std::filesystem::path& dir);

/// Shortest round-trip decimal form; "nan", "inf", "-inf" for non-finite values.
std::string format_double(double v);

}  // namespace weinstein
