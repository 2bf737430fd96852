#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "weinstein/config.hpp"
#include "weinstein/corpus.hpp"
#include "weinstein/maximal.hpp"
#include "weinstein/report.hpp"

namespace weinstein {

/// Entries produced by one acceptance criterion. Entries with criterion 0
/// are auxiliary invariants computed alongside and do not decide the
/// criterion.
struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<ReportEntry> entries;

  /// No entry of this criterion failed and at least one was asserted.
  bool passed() const;
  /// Every entry of this criterion was skipped.
  bool skipped() const;
};

/// Corpus members selected by the config, in corpus order.
std::vector<CorpusFunction> selected_corpus(const RunConfig& cfg);

/// Unit vector (0.6/sqrt(d-1), ..., 0.6/sqrt(d-1), 0.8).
Point probe_direction(int d);

/// "n1xn2 on [-a,a]x(0,b]".
std::string grid_label(const HalfSpaceGrid& grid);

CriterionResult check_ball_measure(const RunConfig& cfg);          // 1
CriterionResult check_indicator_transform(const RunConfig& cfg);   // 2
CriterionResult check_transform_bounds(const RunConfig& cfg);      // 3
CriterionResult check_kernel_normalization(const RunConfig& cfg);  // 4
CriterionResult check_translation(const RunConfig& cfg);           // 5
CriterionResult check_convolution(const RunConfig& cfg);           // 6
CriterionResult check_ball_translate_support(const RunConfig& cfg);  // 7
CriterionResult check_decay(const RunConfig& cfg);                 // 8
CriterionResult check_volume_ratio(const RunConfig& cfg);          // 9

/// M and M~ of the selected corpus on the refinement grids nodes/4, nodes/2,
/// nodes over the config box, sharing one physical radius schedule.
struct MaximalLevel {
  GridPtr grid;
  std::vector<RealField> f;
  std::vector<MaximalResult> m;
  std::vector<unsigned char> mask;  ///< nodes at least r_max inside the box
};

struct MaximalStudy {
  std::vector<std::string> members;
  std::vector<bool> nonnegative;
  std::vector<MaximalLevel> levels;  ///< coarse to fine; empty when gated off
};

/// Empty study when the config is outside the strong regime.
MaximalStudy run_maximal_study(const RunConfig& cfg);

/// Geometric levels in [level_low, level_high] * ||f||_inf.
std::vector<double> weak_type_levels(const RunConfig& cfg, const RealField& f);

CriterionResult check_weak_type(const RunConfig& cfg, const MaximalStudy& study);    // 10
CriterionResult check_strong_type(const RunConfig& cfg, const MaximalStudy& study);  // 11
CriterionResult check_plancherel(const RunConfig& cfg);                              // 12
CriterionResult check_eigenfunction(const RunConfig& cfg);                           // 13
CriterionResult check_vitali(const RunConfig& cfg);                                  // 14

struct VerifyOutcome {
  VerificationReport report;
  MaximalStudy study;
};

/// Every criterion in order, then a lint entry for the report itself.
VerifyOutcome run_verify(const RunConfig& cfg);

/// Fields for one plot file set.
struct PlotField {
  std::string member;
  RealField f;
  RealField m;
  std::optional<RealField> m_ball;
  std::vector<double> levels;
};

/// Plot fields from the coarsest level of a study (one per member).
std::vector<PlotField> plot_fields(const RunConfig& cfg, const MaximalStudy& study);

/// Writes maximal_<member>.csv (coordinates, f, M, M~), distribution_<member>.csv
/// (level, nu({M > level}), nu({M~ > level})) and plot_index.csv listing them.
/// With no fields only the plot_index.csv header is written.
/// Throws IoError naming the path.
void emit_plot_data(const std::vector<PlotField>& fields, const std::filesystem::path& dir);

}  // namespace weinstein
