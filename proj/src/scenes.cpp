#include "cartanforge/scenes.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cartanforge/expr.hpp"
#include "cartanforge/jsonout.hpp"
#include "cartanforge/revolution.hpp"

namespace cartanforge {

Scene sphere_bundle() {
  SurfaceOfRevolution s =
      SurfaceOfRevolution::from_profile("sphere", "sin(c1)", "cos(c1)");
  return {"sphere-bundle", s.bundle_component_strings(), s.default_bundle_box()};
}

Scene flat_bundle() {
  SurfaceOfRevolution s = SurfaceOfRevolution::from_profile("flat", "1", "0");
  return {"flat-bundle", s.bundle_component_strings(), s.default_bundle_box()};
}

Scene family_bundle(double R0) {
  SurfaceOfRevolution s = SurfaceOfRevolution::family(R0);
  return {s.name() + "-bundle", s.bundle_component_strings(),
          s.default_bundle_box()};
}

Coframe scene_coframe(const Scene& scene) {
  auto row = [&](int i) {
    const auto& c = scene.components[static_cast<size_t>(i)];
    return KForm::one_form(parse_field(c[0]), parse_field(c[1]),
                           parse_field(c[2]));
  };
  return Coframe(row(0), row(1), row(2), scene.domain);
}

std::string scene_to_json(const Scene& scene) {
  static const char* labels[3] = {"a1", "a2", "a3"};
  Json forms = Json::array();
  for (int i = 0; i < 3; ++i) {
    Json comps = Json::array();
    for (int j = 0; j < 3; ++j)
      comps.push(Json::string(scene.components[static_cast<size_t>(i)]
                                              [static_cast<size_t>(j)]));
    forms.push(Json::object()
                   .add("label", Json::string(labels[i]))
                   .add("components", std::move(comps)));
  }
  Json lo = Json::array(), hi = Json::array();
  for (int a = 0; a < 3; ++a) {
    lo.push(Json::number(scene.domain.lo[static_cast<size_t>(a)]));
    hi.push(Json::number(scene.domain.hi[static_cast<size_t>(a)]));
  }
  return Json::object()
      .add("name", Json::string(scene.name))
      .add("chart", Json::array()
                        .push(Json::string("c1"))
                        .push(Json::string("c2"))
                        .push(Json::string("c3")))
      .add("forms", std::move(forms))
      .add("domain",
           Json::object().add("lo", std::move(lo)).add("hi", std::move(hi)))
      .dump() + "\n";
}

Scene scene_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw SceneError(std::string("scene is not valid JSON: ") + e.what());
  }
  try {
    Scene scene;
    scene.name = j.at("name").get<std::string>();
    const auto& forms = j.at("forms");
    if (!forms.is_array() || forms.size() != 3)
      throw SceneError("scene needs exactly three forms");
    for (size_t i = 0; i < 3; ++i) {
      const auto& comps = forms[i].at("components");
      if (!comps.is_array() || comps.size() != 3)
        throw SceneError("each form needs exactly three components");
      for (size_t k = 0; k < 3; ++k)
        scene.components[i][k] = comps[k].get<std::string>();
    }
    const auto& dom = j.at("domain");
    for (size_t a = 0; a < 3; ++a) {
      scene.domain.lo[a] = dom.at("lo").at(a).get<double>();
      scene.domain.hi[a] = dom.at("hi").at(a).get<double>();
    }
    return scene;
  } catch (const nlohmann::json::exception& e) {
    throw SceneError(std::string("scene is missing fields: ") + e.what());
  }
}

void save_scene(const Scene& scene, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw SceneError("cannot open " + path + " for writing");
  out << scene_to_json(scene);
  if (!out) throw SceneError("write to " + path + " failed");
}

Scene load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SceneError("cannot open scene file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return scene_from_json(buf.str());
}

Scene resolve_scene(const std::string& uri) {
  const std::string prefix = "builtin:";
  if (uri.rfind(prefix, 0) != 0) return load_scene(uri);
  const std::string name = uri.substr(prefix.size());
  if (name == "sphere") return sphere_bundle();
  if (name == "flat") return flat_bundle();
  const std::string r0key = "r0=";
  if (name.rfind(r0key, 0) == 0) {
    const std::string value = name.substr(r0key.size());
    try {
      size_t used = 0;
      const double R0 = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
      return family_bundle(R0);
    } catch (const std::invalid_argument&) {
      throw SceneError("cannot parse R0 value '" + value + "' in " + uri);
    } catch (const std::out_of_range&) {
      throw SceneError("R0 value out of range in " + uri);
    }
  }
  throw SceneError("unknown builtin scene '" + name +
                   "' (expected sphere, flat, or r0=<value>)");
}

}  // namespace cartanforge
