// Copyright 2026 The real2sim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef REAL2SIM_SCENE_H_
#define REAL2SIM_SCENE_H_

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "real2sim/estimation.h"
#include "real2sim/xml.h"

namespace real2sim::scene {

enum class ParamKind { kMass, kDimensions, kFriction, kSurfaceHeight };

std::string_view ToString(ParamKind kind);
ParamKind ParamKindFromString(std::string_view text);

// Phi: (body name, parameter kind) pairs still to be measured.
using RequiredParameters = std::set<std::pair<std::string, ParamKind>>;

struct Provenance {
  std::string param;  // "mass", "friction", "surface_height"
  double std = 0.0;
  int n = 0;
  std::string source;

  bool operator==(const Provenance& other) const = default;
};

// One <body>. Numeric attributes are optional; absent ones are what the
// pipeline has to measure.
struct Body {
  std::string name;
  bool surface = false;  // class="surface"
  // Two components means the surface height is unknown.
  std::vector<double> pos;
  std::string geom_type;
  std::optional<std::vector<double>> size;
  std::optional<std::pair<double, double>> friction;  // (static, dynamic)
  std::optional<double> mass;
  std::map<std::string, Provenance> provenance;

  std::optional<double> height() const;
  bool operator==(const Body& other) const = default;
};

// Scene files follow a MuJoCo-style subset:
//
//   <mujoco model="lab">
//     <worldbody>
//       <body name="table" class="surface" pos="0.5 0">   <!-- height missing -->
//         <geom type="box" size="0.4 0.6 0.02"/>
//       </body>
//       <body name="bottle" pos="0.5 0 0.865">
//         <geom type="cylinder" size="0.035 0.1" friction="0.41 0.34"/>
//         <inertial pos="0 0 0" mass="0.254"/>
//       </body>
//     </worldbody>
//   </mujoco>
//
// A surface's height is the z of its body position. Estimated values carry a
// comment inside their body:
//   <!-- r2s:estimated param=mass std=0.0021 n=2000 source=... -->
// Elements outside the subset are kept verbatim.
struct SceneDescription {
  std::string model;
  std::vector<Body> bodies;
  XmlNode document;
  std::vector<std::string> warnings;

  const Body* Find(std::string_view name) const;
};

class SceneError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws XmlError (with position) on malformed XML, SceneError on invalid
// values or duplicate names.
SceneDescription ParseScene(std::string_view xml_text);

struct MergeResult {
  SceneDescription scene;
  std::vector<std::string> warnings;
};

// Writes estimate means into the slots listed in phi and records provenance.
// Existing values are never changed. Throws SceneError listing every element
// of phi without a matching estimate.
MergeResult MergeEstimates(const SceneDescription& scene,
                           const std::vector<est::EstimateRecord>& estimates,
                           const RequiredParameters& phi);

std::string EmitXml(const SceneDescription& scene);

// Shortest decimal text that reads back to the same double.
std::string FormatNumber(double value);

}  // namespace real2sim::scene

#endif  // REAL2SIM_SCENE_H_
