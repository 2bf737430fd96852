#include "weinstein/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace weinstein {

const char* to_string(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::skipped:
      return "skipped";
    case Status::info:
      return "info";
  }
  return "info";
}

namespace {

bool within(double observed, double lower, double upper) {
  return std::isfinite(observed) && observed >= lower && observed <= upper;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

nlohmann::ordered_json json_number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

bool is_known_reference(const std::string& reference) {
  static const std::set<std::string> known{
      refs::ball_measure, refs::indicator_transform, refs::indicator_bounds, refs::kernel_bound,
      refs::transform_bound, refs::radial_transform, refs::normalization, refs::translation_integral,
      refs::contraction, refs::product_formula, refs::young, refs::convolution_product,
      refs::support, refs::range, refs::mass, refs::decay,
      refs::volume_ratio, refs::weak_type, refs::strong_type, refs::domination,
      refs::plancherel, refs::inversion, refs::eigenfunction, refs::vitali, refs::plumbing};
  return known.contains(reference);
}

ReportEntry bounded(int criterion, std::string name, std::string reference, double observed, double lower,
                    double upper, std::string grid) {
  ReportEntry e{criterion, std::move(name), std::move(reference), observed, lower, upper, Status::fail,
                std::move(grid)};
  e.status = within(observed, lower, upper) ? Status::pass : Status::fail;
  return e;
}

ReportEntry logged(int criterion, std::string name, std::string reference, double observed, std::string grid) {
  ReportEntry e;
  e.criterion = criterion;
  e.name = std::move(name);
  e.reference = std::move(reference);
  e.observed = observed;
  e.status = Status::info;
  e.grid = std::move(grid);
  return e;
}

ReportEntry skipped(int criterion, std::string name, std::string reference, std::string why) {
  ReportEntry e;
  e.criterion = criterion;
  e.name = std::move(name);
  e.reference = std::move(reference);
  e.status = Status::skipped;
  e.grid = std::move(why);
  return e;
}

bool VerificationReport::passed() const {
  for (const ReportEntry& e : entries) {
    if (e.status == Status::fail) return false;
  }
  return true;
}

std::vector<std::string> lint_report(const VerificationReport& report) {
  std::vector<std::string> problems;
  std::set<std::string> names;
  for (const ReportEntry& e : report.entries) {
    if (e.name.empty()) problems.push_back("entry with empty name");
    if (!names.insert(e.name).second) problems.push_back("duplicate entry name '" + e.name + "'");
    if (!is_known_reference(e.reference)) problems.push_back("'" + e.name + "' has unknown reference '" + e.reference + "'");
    if (e.status == Status::pass || e.status == Status::fail) {
      const bool ok = within(e.observed, e.lower, e.upper);
      if (ok != (e.status == Status::pass)) problems.push_back("'" + e.name + "' status disagrees with bounds");
    }
  }
  return problems;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, ptr);
}

void write_report(const VerificationReport& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create '" + dir.string() + "': " + ec.message());

  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const ReportEntry& e : report.entries) {
    nlohmann::ordered_json j;
    j["criterion"] = e.criterion;
    j["name"] = e.name;
    j["reference"] = e.reference;
    j["observed"] = json_number(e.observed);
    j["lower"] = json_number(e.lower);
    j["upper"] = json_number(e.upper);
    j["status"] = to_string(e.status);
    j["grid"] = e.grid;
    entries.push_back(std::move(j));
  }
  nlohmann::ordered_json doc;
  doc["passed"] = report.passed();
  doc["entries"] = std::move(entries);

  {
    const auto path = dir / "report.json";
    auto out = open_for_write(path);
    out << doc.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed: '" + path.string() + "'");
  }
  {
    const auto path = dir / "report.csv";
    auto out = open_for_write(path);
    out << "criterion,name,reference,observed,lower,upper,status,grid\n";
    for (const ReportEntry& e : report.entries) {
      out << e.criterion << ',' << csv_field(e.name) << ',' << csv_field(e.reference) << ','
          << format_double(e.observed) << ',' << format_double(e.lower) << ',' << format_double(e.upper) << ','
          << to_string(e.status) << ',' << csv_field(e.grid) << '\n';
    }
    if (!out) throw std::runtime_error("write failed: '" + path.string() + "'");
  }
}

}  // namespace weinstein
