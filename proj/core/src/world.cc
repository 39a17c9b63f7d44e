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

#include "real2sim/world.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <utility>

namespace real2sim::sim {
namespace {

// How far a held object may be pushed into a support and still be considered
// resting on it rather than passing through.
constexpr double kSupportCapture = 0.01;
constexpr double kRestingTolerance = 1e-4;

bool InsideRect(const Eigen::Vector2d& p, const Eigen::Vector2d& center,
                const Eigen::Vector2d& half) {
  return std::abs(p.x() - center.x()) <= half.x() &&
         std::abs(p.y() - center.y()) <= half.y();
}

Eigen::Quaterniond YawOnly(const Eigen::Quaterniond& q) {
  const double yaw = std::atan2(2.0 * (q.w() * q.z() + q.x() * q.y()),
                                1.0 - 2.0 * (q.y() * q.y() + q.z() * q.z()));
  return Eigen::Quaterniond(Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitZ()));
}

double HalfHeight(const ObjectSpec& spec) { return 0.5 * spec.size.z(); }

double GraspWidth(const ObjectSpec& spec) {
  return std::min(spec.size.x(), spec.size.y());
}

}  // namespace

void GroundTruthWorld::Validate() const {
  std::set<std::string> names;
  for (const auto& object : objects) {
    if (!names.insert(object.name).second) {
      throw std::invalid_argument("duplicate body name '" + object.name + "'");
    }
    if (!(object.mass > 0.0)) {
      throw std::invalid_argument("object '" + object.name + "' needs mass > 0");
    }
    if (!(object.dynamic_mu >= 0.0 && object.dynamic_mu <= object.static_mu)) {
      throw std::invalid_argument("object '" + object.name +
                                  "' needs 0 <= dynamic_mu <= static_mu");
    }
    if (!(object.size.minCoeff() > 0.0)) {
      throw std::invalid_argument("object '" + object.name + "' needs positive size");
    }
  }
  for (const auto& surface : surfaces) {
    if (!names.insert(surface.name).second) {
      throw std::invalid_argument("duplicate body name '" + surface.name + "'");
    }
    if (!std::isfinite(surface.height)) {
      throw std::invalid_argument("surface '" + surface.name + "' height not finite");
    }
  }
  if (!(params.dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  if (!(params.gravity > 0.0)) throw std::invalid_argument("gravity must be > 0");
  if (!(params.noise_sigma_torque >= 0.0)) {
    throw std::invalid_argument("noise sigma must be >= 0");
  }
}

World::World(GroundTruthWorld truth, KinematicChain chain)
    : truth_(std::move(truth)), chain_(std::move(chain)), rng_(truth_.params.seed) {
  truth_.Validate();
  chain_.Validate();
  for (const auto& spec : truth_.objects) {
    objects_.push_back({spec, spec.pose});
  }
}

RobotState World::InitialState() const {
  RobotState state;
  state.q = chain_.home.size() == chain_.dof() ? chain_.home
                                                : Eigen::VectorXd::Zero(chain_.dof());
  state.qdot = Eigen::VectorXd::Zero(chain_.dof());
  state.x = ForwardKinematics(chain_, state.q);
  state.gripper_width = truth_.params.max_gripper_width;
  state.gripper_closed = false;
  return state;
}

World::ObjectState* World::Find(const std::string& name) {
  for (auto& object : objects_) {
    if (object.spec.name == name) return &object;
  }
  return nullptr;
}

const World::ObjectState* World::Find(const std::string& name) const {
  for (const auto& object : objects_) {
    if (object.spec.name == name) return &object;
  }
  return nullptr;
}

std::vector<std::string> World::HeldGroup() const {
  std::vector<std::string> group;
  if (attachment_.held_object) {
    group.push_back(*attachment_.held_object);
    group.insert(group.end(), attachment_.passengers.begin(),
                 attachment_.passengers.end());
  }
  return group;
}

std::optional<World::Support> World::SupportBelow(
    const ObjectState& object, double bottom,
    const std::vector<std::string>& exclude) const {
  const Eigen::Vector2d xy = object.pose.position.head<2>();
  std::optional<Support> best;
  auto consider = [&](const std::string& name, double top) {
    if (top > bottom + kSupportCapture) return;
    if (!best || top > best->top) best = Support{name, top};
  };
  for (const auto& surface : truth_.surfaces) {
    if (InsideRect(xy, surface.center, surface.half_extent)) {
      consider(surface.name, surface.height);
    }
  }
  for (const auto& other : objects_) {
    if (other.spec.name == object.spec.name) continue;
    if (std::find(exclude.begin(), exclude.end(), other.spec.name) != exclude.end()) {
      continue;
    }
    if (InsideRect(xy, other.pose.position.head<2>(), 0.5 * other.spec.size.head<2>())) {
      consider(other.spec.name, other.pose.position.z() + HalfHeight(other.spec));
    }
  }
  return best;
}

std::vector<std::string> World::RestingOn(const std::string& name) const {
  std::vector<std::string> result;
  const ObjectState* base = Find(name);
  if (base == nullptr) return result;
  const double top = base->pose.position.z() + HalfHeight(base->spec);
  for (const auto& other : objects_) {
    if (other.spec.name == name) continue;
    const double bottom = other.pose.position.z() - HalfHeight(other.spec);
    if (std::abs(bottom - top) < kRestingTolerance &&
        InsideRect(other.pose.position.head<2>(), base->pose.position.head<2>(),
                   0.5 * base->spec.size.head<2>())) {
      result.push_back(other.spec.name);
      for (auto& above : RestingOn(other.spec.name)) result.push_back(above);
    }
  }
  return result;
}

World::Interaction World::Evaluate(const RobotState& state) const {
  const ChainFrames frames = ComputeFrames(chain_, state.q);
  const Eigen::Isometry3d& tool = frames.tool;
  const Eigen::Vector3d tool_origin = tool.translation();
  const double g = truth_.params.gravity;
  Interaction result;

  auto apply = [&](const Eigen::Vector3d& force, const Eigen::Vector3d& point) {
    result.wrench.force += force;
    result.wrench.torque += (point - tool_origin).cross(force);
  };

  // Fingertip against support planes; frictionless.
  const Eigen::Vector3d tip = FingertipPoint(chain_, Pose::FromIsometry(tool));
  for (const auto& surface : truth_.surfaces) {
    if (!InsideRect(tip.head<2>(), surface.center, surface.half_extent)) continue;
    const double penetration = surface.height - tip.z();
    if (penetration <= 0.0) continue;
    const double normal = truth_.params.penalty_stiffness * penetration;
    apply(Eigen::Vector3d(0.0, 0.0, normal), tip);
    result.contacts.push_back({"gripper", surface.name, normal, Eigen::Vector2d::Zero(), false});
  }

  if (!attachment_.held_object) return result;
  const ObjectState* held = Find(*attachment_.held_object);
  const Eigen::Isometry3d held_attached = tool * attachment_.grasp_offset;
  const std::vector<std::string> group = HeldGroup();

  double group_mass = 0.0;
  std::vector<std::pair<double, Eigen::Vector3d>> masses;
  for (const auto& name : group) {
    const ObjectState* member = Find(name);
    Eigen::Vector3d com = held_attached.translation();
    if (name != held->spec.name) {
      com = (held_attached * passenger_offsets_.at(name)).translation();
    }
    masses.emplace_back(member->spec.mass, com);
    group_mass += member->spec.mass;
  }

  ObjectState probe = *held;
  probe.pose = Pose::FromIsometry(held_attached);
  const double bottom = probe.pose.position.z() - HalfHeight(held->spec);
  const auto support = SupportBelow(probe, bottom, group);

  double load = 1.0;
  if (support) {
    const double gap = bottom - support->top;
    load = std::clamp((gap - truth_.params.seat_clearance) / truth_.params.seat_band,
                      0.0, 1.0);
  }
  for (const auto& [mass, com] : masses) {
    apply(Eigen::Vector3d(0.0, 0.0, -load * mass * g), com);
  }
  if (!support || load >= 1.0) return result;

  const double normal = (1.0 - load) * group_mass * g;
  const std::string key = held->spec.name + "|" + support->name;
  const Eigen::Vector2d p = probe.pose.position.head<2>();
  FrictionMemory memory;
  if (auto it = friction_.find(key); it != friction_.end()) {
    memory = it->second;
  } else {
    memory.anchor = p;
  }
  const double k_t = truth_.params.tangential_stiffness;
  const double static_limit = held->spec.static_mu * normal;
  const double dynamic_limit = held->spec.dynamic_mu * normal;
  const Eigen::Vector2d trial = -k_t * (p - memory.anchor);
  const double trial_norm = trial.norm();
  Eigen::Vector2d friction = trial;
  bool sliding = false;
  if (!memory.sliding) {
    if (trial_norm > static_limit) {
      // Breakaway: this tick still sticks at the cone boundary.
      friction = trial * (static_limit / trial_norm);
      memory.sliding = true;
      memory.anchor = p + friction / k_t;
    }
  } else if (trial_norm > dynamic_limit * (1.0 + 1e-9)) {
    friction = trial * (dynamic_limit / trial_norm);
    sliding = true;
    memory.anchor = p + friction / k_t;
  } else {
    if (trial_norm > static_limit) friction = trial * (static_limit / trial_norm);
    memory.sliding = false;
  }
  apply(Eigen::Vector3d(friction.x(), friction.y(), 0.0),
        Eigen::Vector3d(p.x(), p.y(), support->top));
  result.contacts.push_back({held->spec.name, support->name, normal, friction, sliding});
  result.memory[key] = memory;
  return result;
}

Wrench World::ExternalWrench(const RobotState& state) const {
  return Evaluate(state).wrench;
}

std::vector<ContactState> World::ContactForces(const RobotState& state) const {
  return Evaluate(state).contacts;
}

JointTorques World::SenseExternalTorques(const RobotState& state) {
  const JacobianMatrix jacobian = Jacobian(chain_, state.q);
  JointTorques tau = TorquesFromWrench(jacobian, Evaluate(state).wrench);
  const double sigma = truth_.params.noise_sigma_torque;
  for (int i = 0; i < tau.tau.size(); ++i) tau.tau[i] += sigma * normal_(rng_);
  return tau;
}

StepStatus World::Step(RobotState& state, const JointTorques& tau_cmd, double dt) {
  if (std::abs(dt - truth_.params.dt) > 1e-12) {
    throw std::invalid_argument("step dt differs from the configured tick");
  }
  const int dof = chain_.dof();
  if (tau_cmd.tau.size() != dof || state.q.size() != dof || state.qdot.size() != dof) {
    throw std::invalid_argument("step: dimension mismatch");
  }
  if (!tau_cmd.tau.allFinite() || !state.q.allFinite() || !state.qdot.allFinite()) {
    return StepStatus::kFault;
  }
  const Interaction interaction = Evaluate(state);
  const JacobianMatrix jacobian = Jacobian(chain_, state.q);
  const Eigen::VectorXd tau_ext = jacobian.transpose() * interaction.wrench.AsVector();
  const Eigen::VectorXd qddot =
      (tau_cmd.tau + tau_ext - truth_.params.joint_viscous * state.qdot) /
      truth_.params.joint_inertia;
  const Eigen::VectorXd qdot = state.qdot + dt * qddot;
  const Eigen::VectorXd q = state.q + dt * qdot;
  if (!q.allFinite() || !qdot.allFinite()) return StepStatus::kFault;

  state.qdot = qdot;
  state.q = q;
  const ChainFrames frames = ComputeFrames(chain_, state.q);
  state.x = Pose::FromIsometry(frames.tool);
  friction_ = interaction.memory;
  UpdateHeldPoses(frames.tool);
  time_ += dt;
  return StepStatus::kOk;
}

void World::UpdateHeldPoses(const Eigen::Isometry3d& tool) {
  if (!attachment_.held_object) return;
  ObjectState* held = Find(*attachment_.held_object);
  held->pose = Pose::FromIsometry(tool * attachment_.grasp_offset);
  const double bottom = held->pose.position.z() - HalfHeight(held->spec);
  if (auto support = SupportBelow(*held, bottom, HeldGroup());
      support && bottom < support->top) {
    // Fingers slip along the object instead of pushing it into the support.
    held->pose.position.z() = support->top + HalfHeight(held->spec);
  }
  const Eigen::Isometry3d held_pose = held->pose.ToIsometry();
  for (const auto& name : attachment_.passengers) {
    Find(name)->pose = Pose::FromIsometry(held_pose * passenger_offsets_.at(name));
  }
}

void World::PlaceOnSupport(ObjectState& object) {
  const double bottom = object.pose.position.z() - HalfHeight(object.spec);
  const auto support = SupportBelow(object, bottom, HeldGroup());
  const double top = support ? support->top : 0.0;
  const double drop = bottom - top;
  object.pose.position.z() = top + HalfHeight(object.spec);
  object.pose.orientation = YawOnly(object.pose.orientation);
  const bool dropped = drop > truth_.params.drop_tolerance;
  events_.push_back({time_, dropped ? "drop" : "release", object.spec.name, object.pose});
}

void World::GripperCommand(RobotState& state, GripperAction action) {
  const Eigen::Isometry3d tool = ComputeFrames(chain_, state.q).tool;
  if (action == GripperAction::kClose) {
    if (state.gripper_closed) return;
    state.gripper_closed = true;
    friction_.clear();
    const ObjectState* nearest = nullptr;
    double best = truth_.params.grasp_tolerance;
    for (const auto& object : objects_) {
      const double distance = (object.pose.position - tool.translation()).norm();
      if (distance <= best && GraspWidth(object.spec) <= truth_.params.max_gripper_width) {
        best = distance;
        nearest = &object;
      }
    }
    if (nearest == nullptr) {
      state.gripper_width = 0.0;
      events_.push_back({time_, "close_empty", "", Pose::FromIsometry(tool)});
      return;
    }
    state.gripper_width = GraspWidth(nearest->spec);
    const Eigen::Isometry3d object_pose = nearest->pose.ToIsometry();
    attachment_.held_object = nearest->spec.name;
    attachment_.grasp_offset = tool.inverse() * object_pose;
    attachment_.passengers = RestingOn(nearest->spec.name);
    passenger_offsets_.clear();
    for (const auto& name : attachment_.passengers) {
      passenger_offsets_[name] = object_pose.inverse() * Find(name)->pose.ToIsometry();
    }
    events_.push_back({time_, "attach", nearest->spec.name, nearest->pose});
    return;
  }

  state.gripper_closed = false;
  state.gripper_width = truth_.params.max_gripper_width;
  if (!attachment_.held_object) return;
  ObjectState* held = Find(*attachment_.held_object);
  PlaceOnSupport(*held);
  const Eigen::Isometry3d held_pose = held->pose.ToIsometry();
  for (const auto& name : attachment_.passengers) {
    Find(name)->pose = Pose::FromIsometry(held_pose * passenger_offsets_.at(name));
  }
  attachment_ = AttachmentState{};
  passenger_offsets_.clear();
  friction_.clear();
}

std::vector<ObservedObject> World::ObservePoses() const {
  std::vector<ObservedObject> result;
  for (const auto& object : objects_) result.push_back({object.spec.name, object.pose});
  return result;
}

std::optional<Pose> World::ObjectPose(const std::string& name) const {
  const ObjectState* object = Find(name);
  if (object == nullptr) return std::nullopt;
  return object->pose;
}

}  // namespace real2sim::sim
