#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include "cartanforge/coframe.hpp"

namespace cartanforge {

/// Failure to resolve, read, or decode a scene description.
class SceneError : public std::runtime_error {
 public:
  explicit SceneError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A named coframe given by expression strings: rows a1, a2, a3 against
/// dc1, dc2, dc3 in the (r, theta, psi) chart, plus a sampling box.
struct Scene {
  std::string name;
  std::array<std::array<std::string, 3>, 3> components;
  Box domain;
};

/// Round-sphere frame bundle (profile h = sin r).
Scene sphere_bundle();
/// Flat-cylinder frame bundle (profile h = 1).
Scene flat_bundle();
/// Frame bundle of the curvature family member with parameter R0.
Scene family_bundle(double R0);

/// Parses the nine component strings; ParseError propagates.
Coframe scene_coframe(const Scene& scene);

std::string scene_to_json(const Scene& scene);
Scene scene_from_json(const std::string& text);

void save_scene(const Scene& scene, const std::string& path);
Scene load_scene(const std::string& path);

/// Accepts "builtin:sphere", "builtin:flat", "builtin:r0=<value>", or a path
/// to a scene file on disk.
Scene resolve_scene(const std::string& uri);

}  // namespace cartanforge
