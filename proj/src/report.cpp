#include "cartanforge/report.hpp"

#include <algorithm>
#include <stdexcept>

namespace cartanforge {

void ResidualSet::add(std::string name, ScalarField field) {
  entries_.push_back({std::move(name), std::move(field), FieldStat{}});
}

void ResidualSet::evaluate(const std::vector<Point>& pts) {
  std::vector<ScalarField> fields;
  fields.reserve(entries_.size());
  for (const Entry& e : entries_) fields.push_back(e.field);
  std::vector<FieldStat> stats = evaluate_stats(fields, pts);
  for (size_t i = 0; i < entries_.size(); ++i) entries_[i].stat = stats[i];
  evaluated_ = true;
}

bool ResidualSet::pass() const {
  if (!evaluated_) throw std::logic_error("residual set was never evaluated");
  return std::all_of(entries_.begin(), entries_.end(), [&](const Entry& e) {
    return e.stat.sup_abs <= tolerance_;
  });
}

double ResidualSet::worst_sup() const {
  double w = 0.0;
  for (const Entry& e : entries_) w = std::max(w, e.stat.sup_abs);
  return w;
}

const ResidualSet::Entry& ResidualSet::entry(std::string_view name) const {
  for (const Entry& e : entries_)
    if (e.name == name) return e;
  throw std::out_of_range("no residual named '" + std::string(name) + "'");
}

namespace {

Json point_json(const Point& p) {
  return Json::array()
      .push(Json::number(p.c1))
      .push(Json::number(p.c2))
      .push(Json::number(p.c3));
}

Json stat_json(const FieldStat& s) {
  return Json::object()
      .add("sup", Json::number(s.sup_abs))
      .add("mean", Json::number(s.mean_abs))
      .add("min", Json::number(s.min_value))
      .add("max", Json::number(s.max_value))
      .add("argmax", point_json(s.argmax))
      .add("points", Json::integer(static_cast<std::int64_t>(s.count)));
}

}  // namespace

Json ResidualSet::to_json() const {
  Json items = Json::object();
  for (const Entry& e : entries_) items.add(e.name, stat_json(e.stat));
  return Json::object()
      .add("tolerance", Json::number(tolerance_))
      .add("pass", Json::boolean(evaluated_ ? pass() : false))
      .add("worst_sup", Json::number(worst_sup()))
      .add("residuals", std::move(items));
}

void StructureReport::add_extracted(std::string name, ScalarField field,
                                    const std::vector<Point>& pts) {
  Extracted ex;
  ex.name = std::move(name);
  ex.field = field;
  if (!pts.empty()) {
    const size_t n = pts.size();
    const size_t picks[5] = {0, n / 4, n / 2, (3 * n) / 4, n - 1};
    size_t last = static_cast<size_t>(-1);
    for (size_t idx : picks) {
      if (idx == last) continue;
      last = idx;
      ex.samples.emplace_back(pts[idx], field.value(pts[idx]));
    }
  }
  extracted.push_back(std::move(ex));
}

Json StructureReport::to_json() const {
  Json ex = Json::object();
  for (const Extracted& e : extracted) {
    Json samples = Json::array();
    for (const auto& [p, v] : e.samples)
      samples.push(Json::object()
                       .add("point", point_json(p))
                       .add("value", Json::number(v)));
    ex.add(e.name, std::move(samples));
  }
  return Json::object()
      .add("pass", Json::boolean(pass()))
      .add("checks", residuals.to_json())
      .add("extracted", std::move(ex));
}

}  // namespace cartanforge
