#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cartanforge/jsonout.hpp"
#include "cartanforge/sampling.hpp"

namespace cartanforge {

/// Raised when an operation's hypotheses fail on the sample domain (for
/// example a fiber-dependent conformal factor, or a construction applied
/// where its defining conditions do not hold).
class PreconditionError : public std::runtime_error {
 public:
  explicit PreconditionError(const std::string& msg)
      : std::runtime_error(msg) {}
};

/// Named residual fields together with their sampled statistics. A set
/// passes when every sup-norm stays within the tolerance.
class ResidualSet {
 public:
  struct Entry {
    std::string name;
    ScalarField field;
    FieldStat stat;
  };

  explicit ResidualSet(double tolerance = 1e-8) : tolerance_(tolerance) {}

  void add(std::string name, ScalarField field);
  /// Evaluates all entries point-major and stores the statistics.
  void evaluate(const std::vector<Point>& pts);

  double tolerance() const { return tolerance_; }
  bool pass() const;
  double worst_sup() const;
  const Entry& entry(std::string_view name) const;
  double sup(std::string_view name) const { return entry(name).stat.sup_abs; }
  const std::vector<Entry>& entries() const { return entries_; }

  Json to_json() const;

 private:
  double tolerance_;
  std::vector<Entry> entries_;
  bool evaluated_ = false;
};

/// Verification outcome for a structure-equation check: residual statistics
/// plus point samples of the functions extracted along the way.
struct StructureReport {
  ResidualSet residuals;
  struct Extracted {
    std::string name;
    ScalarField field;
    std::vector<std::pair<Point, double>> samples;
  };
  std::vector<Extracted> extracted;

  bool pass() const { return residuals.pass(); }
  Json to_json() const;

  /// Records an extracted function with a handful of deterministic samples
  /// drawn from the evaluation points.
  void add_extracted(std::string name, ScalarField field,
                     const std::vector<Point>& pts);
};

}  // namespace cartanforge
