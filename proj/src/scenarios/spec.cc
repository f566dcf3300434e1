// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#include "scenarios/spec.hpp"

namespace oidclab::scenarios {

using adversary::AttackKind;

std::string attack_label(const std::optional<AttackKind>& attack) {
  return attack ? std::string(adversary::attack_name(*attack)) : "none";
}

std::optional<AttackKind> attack_from_label(std::string_view label) {
  if (label == "none") return std::nullopt;
  return adversary::attack_from_name(label);
}

bool ScenarioSpec::forged_initiation() const {
  return attack == AttackKind::kTokenTheftCode || attack == AttackKind::kTokenTheftImplicit;
}

Json ScenarioSpec::to_json() const {
  Json targets = Json::array();
  for (const auto& u : ssrf_targets) targets.push_back(u.render());
  Json out{{"attack", attack_label(attack)},
           {"defenses", defenses.to_json()},
           {"flow", std::string(client::flow_name(flow))},
           {"seed", seed},
           {"victim", victim.render()},
           {"adversary_domain", adversary_domain},
           {"ssrf_targets", std::move(targets)},
           {"payload_size", payload_size},
           {"lying_head", lying_head},
           {"dos_threshold", dos_threshold},
           {"start_time", start_time}};
  out["injected_claims"] = injected_claims ? *injected_claims : Json();
  return out;
}

namespace {

template <typename T>
T typed(const Json& v, const std::string& key) {
  try {
    return v.get<T>();
  } catch (const Json::exception&) {
    fail(ErrorCode::kInvalidArgument, key + " has the wrong type");
  }
}

std::uint64_t unsigned_member(const Json& v, const std::string& key) {
  if (!v.is_number_unsigned()) fail(ErrorCode::kInvalidArgument, key + " must be a non-negative integer");
  return v.get<std::uint64_t>();
}

}  // namespace

ScenarioSpec ScenarioSpec::from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorCode::kInvalidArgument, "scenario spec must be an object");
  ScenarioSpec s;
  for (const auto& [key, v] : j.items()) {
    if (key == "attack") {
      s.attack = attack_from_label(typed<std::string>(v, key));
    } else if (key == "defenses") {
      s.defenses = client::HardeningPolicy::from_json(v);
    } else if (key == "flow") {
      s.flow = client::flow_from_name(typed<std::string>(v, key));
    } else if (key == "seed") {
      s.seed = unsigned_member(v, key);
    } else if (key == "victim") {
      try {
        s.victim = parse_identity(typed<std::string>(v, key));
      } catch (const Error& e) {
        fail(ErrorCode::kInvalidArgument, "victim: " + e.detail());
      }
    } else if (key == "adversary_domain") {
      s.adversary_domain = to_lower(typed<std::string>(v, key));
      if (!is_valid_hostname(s.adversary_domain)) fail(ErrorCode::kInvalidArgument, "adversary_domain");
    } else if (key == "ssrf_targets") {
      if (!v.is_array()) fail(ErrorCode::kInvalidArgument, "ssrf_targets must be a list");
      for (const auto& t : v) {
        auto url = t.is_string() ? Url::try_parse(t.get<std::string>()) : std::nullopt;
        if (!url) fail(ErrorCode::kInvalidArgument, "ssrf target " + t.dump());
        s.ssrf_targets.push_back(*url);
      }
    } else if (key == "payload_size") {
      s.payload_size = unsigned_member(v, key);
    } else if (key == "lying_head") {
      s.lying_head = typed<bool>(v, key);
    } else if (key == "injected_claims") {
      if (v.is_null()) continue;
      if (!v.is_object()) fail(ErrorCode::kInvalidArgument, "injected_claims must be an object");
      s.injected_claims = v;
    } else if (key == "dos_threshold") {
      s.dos_threshold = unsigned_member(v, key);
    } else if (key == "start_time") {
      s.start_time = typed<EpochSeconds>(v, key);
    } else {
      fail(ErrorCode::kInvalidArgument, "unknown scenario member " + key);
    }
  }
  return s;
}

}  // namespace oidclab::scenarios
