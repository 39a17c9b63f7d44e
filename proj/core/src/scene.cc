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

#include "real2sim/scene.h"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include <fmt/format.h>

namespace real2sim::scene {
namespace {

constexpr std::string_view kProvenanceTag = "r2s:estimated";
constexpr std::string_view kCanonicalOrder[] = {"name", "class", "type", "pos",  "quat",
                                                "size", "mass",  "friction"};

std::vector<double> ParseNumbers(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size() || errno == ERANGE || !std::isfinite(v)) {
      throw SceneError(what + ": '" + text + "' is not a list of numbers");
    }
    out.push_back(v);
  }
  return out;
}

std::string JoinNumbers(const std::vector<double>& values) {
  std::string out;
  for (double v : values) out += (out.empty() ? "" : " ") + FormatNumber(v);
  return out;
}

std::optional<Provenance> ParseProvenance(const std::string& comment) {
  if (comment.compare(0, kProvenanceTag.size(), kProvenanceTag) != 0) return std::nullopt;
  Provenance p;
  std::istringstream in(comment.substr(kProvenanceTag.size()));
  std::string token;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    if (key == "param") {
      p.param = value;
    } else if (key == "std") {
      p.std = std::strtod(value.c_str(), nullptr);
    } else if (key == "n") {
      p.n = std::atoi(value.c_str());
    } else if (key == "source") {
      p.source = value;
    }
  }
  if (p.param.empty()) return std::nullopt;
  return p;
}

std::string ProvenanceText(const Provenance& p) {
  return fmt::format("{} param={} std={} n={} source={}", kProvenanceTag, p.param,
                     FormatNumber(p.std), p.n, p.source.empty() ? "-" : p.source);
}

void ReadBody(const XmlNode& node, SceneDescription& scene) {
  Body body;
  const std::string* name = node.Attribute("name");
  if (name == nullptr || name->empty()) throw SceneError("body without a name");
  body.name = *name;
  const std::string what = "body '" + body.name + "'";
  if (const auto* cls = node.Attribute("class")) body.surface = *cls == "surface";
  if (const auto* pos = node.Attribute("pos")) {
    body.pos = ParseNumbers(*pos, what + " pos");
    if (body.pos.size() != 2 && body.pos.size() != 3) {
      throw SceneError(what + ": pos needs 2 or 3 numbers");
    }
  }
  for (const auto& child : node.children) {
    if (child.kind == XmlNode::Kind::kComment) {
      if (auto p = ParseProvenance(child.text)) body.provenance[p->param] = *p;
      continue;
    }
    if (child.kind != XmlNode::Kind::kElement) continue;
    if (child.name == "geom") {
      if (!body.geom_type.empty() || body.size || body.friction) {
        scene.warnings.push_back(what + ": only the first geom is read");
        continue;
      }
      body.geom_type = child.Attribute("type") ? *child.Attribute("type") : "sphere";
      if (const auto* size = child.Attribute("size")) {
        body.size = ParseNumbers(*size, what + " size");
        if (body.size->empty() ||
            std::any_of(body.size->begin(), body.size->end(), [](double v) { return v <= 0; })) {
          throw SceneError(what + ": size entries must be positive");
        }
      }
      if (const auto* friction = child.Attribute("friction")) {
        const auto mu = ParseNumbers(*friction, what + " friction");
        if (mu.size() != 2 || mu[0] < 0 || mu[1] < 0) {
          throw SceneError(what + ": friction needs two non-negative numbers (static dynamic)");
        }
        body.friction = std::make_pair(mu[0], mu[1]);
      }
    } else if (child.name == "inertial") {
      if (const auto* mass = child.Attribute("mass")) {
        const auto m = ParseNumbers(*mass, what + " mass");
        if (m.size() != 1 || !(m[0] > 0)) throw SceneError(what + ": mass must be positive");
        body.mass = m[0];
      }
    } else if (child.name == "body") {
      ReadBody(child, scene);
    } else {
      scene.warnings.push_back(what + ": unsupported element <" + child.name +
                               "> kept verbatim");
    }
  }
  if (scene.Find(body.name) != nullptr) {
    throw SceneError("duplicate body name '" + body.name + "'");
  }
  scene.bodies.push_back(std::move(body));
}

SceneDescription FromDocument(XmlNode document) {
  SceneDescription scene;
  if (document.name != "mujoco") {
    throw SceneError("document element must be <mujoco>, found <" + document.name + ">");
  }
  if (const auto* model = document.Attribute("model")) scene.model = *model;
  for (const auto& child : document.children) {
    if (child.kind != XmlNode::Kind::kElement) continue;
    if (child.name != "worldbody") {
      scene.warnings.push_back("unsupported element <" + child.name + "> kept verbatim");
      continue;
    }
    for (const auto& item : child.children) {
      if (item.kind != XmlNode::Kind::kElement) continue;
      if (item.name == "body") {
        ReadBody(item, scene);
      } else {
        scene.warnings.push_back("unsupported element <" + item.name + "> kept verbatim");
      }
    }
  }
  scene.document = std::move(document);
  return scene;
}

XmlNode* FindBodyNode(XmlNode& node, const std::string& name) {
  for (auto& child : node.children) {
    if (child.kind != XmlNode::Kind::kElement) continue;
    if (child.name == "body" && child.Attribute("name") && *child.Attribute("name") == name) {
      return &child;
    }
    if (XmlNode* found = FindBodyNode(child, name)) return found;
  }
  return nullptr;
}

void Canonicalize(XmlNode& node) {
  std::stable_sort(node.attributes.begin(), node.attributes.end(),
                   [](const auto& a, const auto& b) {
                     auto rank = [](const std::string& key) {
                       const auto* it = std::find(std::begin(kCanonicalOrder),
                                                  std::end(kCanonicalOrder), key);
                       return static_cast<int>(it - std::begin(kCanonicalOrder));
                     };
                     return rank(a.first) < rank(b.first);
                   });
  for (auto& child : node.children) Canonicalize(child);
}

void AddProvenance(XmlNode& body, const Provenance& p) {
  auto it = body.children.begin();
  while (it != body.children.end() && it->kind == XmlNode::Kind::kComment &&
         ParseProvenance(it->text)) {
    ++it;
  }
  body.children.insert(it, XmlNode::Comment(ProvenanceText(p)));
}

const est::EstimateRecord* FindEstimate(const std::vector<est::EstimateRecord>& estimates,
                                        const std::string& target, est::Parameter parameter) {
  for (const auto& e : estimates) {
    if (e.target == target && e.parameter == parameter) return &e;
  }
  return nullptr;
}

Provenance ProvenanceOf(const est::EstimateRecord& e) {
  return {std::string(est::ToString(e.parameter)), e.std, e.n_samples, e.source};
}

}  // namespace

std::string_view ToString(ParamKind kind) {
  switch (kind) {
    case ParamKind::kMass: return "mass";
    case ParamKind::kDimensions: return "dimensions";
    case ParamKind::kFriction: return "friction";
    case ParamKind::kSurfaceHeight: return "surface_height";
  }
  return "mass";
}

ParamKind ParamKindFromString(std::string_view text) {
  for (ParamKind k : {ParamKind::kMass, ParamKind::kDimensions, ParamKind::kFriction,
                      ParamKind::kSurfaceHeight}) {
    if (ToString(k) == text) return k;
  }
  throw SceneError("unknown parameter kind '" + std::string(text) + "'");
}

std::optional<double> Body::height() const {
  if (pos.size() == 3) return pos[2];
  return std::nullopt;
}

const Body* SceneDescription::Find(std::string_view name) const {
  for (const auto& b : bodies) {
    if (b.name == name) return &b;
  }
  return nullptr;
}

std::string FormatNumber(double value) { return fmt::format("{}", value); }

SceneDescription ParseScene(std::string_view xml_text) {
  return FromDocument(ParseXml(xml_text));
}

MergeResult MergeEstimates(const SceneDescription& scene,
                           const std::vector<est::EstimateRecord>& estimates,
                           const RequiredParameters& phi) {
  XmlNode document = scene.document;
  std::vector<std::string> missing;
  std::vector<const est::EstimateRecord*> used;
  for (const auto& [name, kind] : phi) {
    const Body* body = scene.Find(name);
    XmlNode* node = FindBodyNode(document, name);
    if (body == nullptr || node == nullptr) {
      missing.push_back(name + ": body not in the scene");
      continue;
    }
    switch (kind) {
      case ParamKind::kMass: {
        if (body->mass) break;
        const auto* e = FindEstimate(estimates, name, est::Parameter::kMass);
        if (e == nullptr) {
          missing.push_back(name + ": mass");
          break;
        }
        XmlNode* inertial = node->FirstChild("inertial");
        if (inertial == nullptr) {
          node->children.push_back(XmlNode::Element("inertial"));
          inertial = &node->children.back();
          inertial->SetAttribute("pos", "0 0 0");
        }
        inertial->SetAttribute("mass", FormatNumber(e->mean));
        AddProvenance(*node, ProvenanceOf(*e));
        used.push_back(e);
        break;
      }
      case ParamKind::kFriction: {
        if (body->friction) break;
        const auto* s = FindEstimate(estimates, name, est::Parameter::kStaticMu);
        const auto* d = FindEstimate(estimates, name, est::Parameter::kDynamicMu);
        XmlNode* geom = node->FirstChild("geom");
        if (s == nullptr || d == nullptr || geom == nullptr) {
          missing.push_back(name + (geom == nullptr ? ": friction (no geom)" : ": friction"));
          break;
        }
        geom->SetAttribute("friction", FormatNumber(s->mean) + " " + FormatNumber(d->mean));
        AddProvenance(*node, ProvenanceOf(*s));
        AddProvenance(*node, ProvenanceOf(*d));
        used.push_back(s);
        used.push_back(d);
        break;
      }
      case ParamKind::kSurfaceHeight: {
        if (body->height()) break;
        const auto* e = FindEstimate(estimates, name, est::Parameter::kSurfaceHeight);
        if (e == nullptr) {
          missing.push_back(name + ": surface_height");
          break;
        }
        std::vector<double> pos = body->pos;
        pos.resize(2, 0.0);
        pos.push_back(e->mean);
        node->SetAttribute("pos", JoinNumbers(pos));
        AddProvenance(*node, ProvenanceOf(*e));
        used.push_back(e);
        break;
      }
      case ParamKind::kDimensions:
        if (!body->size) missing.push_back(name + ": dimensions (no estimator)");
        break;
    }
  }
  if (!missing.empty()) {
    std::string message = "missing estimates:";
    for (const auto& m : missing) message += " [" + m + "]";
    throw SceneError(message);
  }
  MergeResult result;
  for (const auto& e : estimates) {
    if (std::find(used.begin(), used.end(), &e) == used.end()) {
      result.warnings.push_back("estimate " + e.target + "/" +
                                std::string(est::ToString(e.parameter)) +
                                " is not required by the scene; ignored");
    }
  }
  result.scene = FromDocument(std::move(document));
  return result;
}

std::string EmitXml(const SceneDescription& scene) {
  XmlNode document = scene.document;
  Canonicalize(document);
  return WriteXml(document);
}

}  // namespace real2sim::scene
