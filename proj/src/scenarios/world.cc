// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#include "scenarios/world.hpp"

#include <optional>

#include "op/provider.hpp"
#include "simnet/user_agent.hpp"

namespace oidclab::scenarios {

using adversary::AttackKind;
using simnet::HttpRequest;
using simnet::HttpResponse;
using simnet::Principal;

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kCompromised: return "COMPROMISED";
    case Verdict::kBlocked: return "BLOCKED";
    case Verdict::kCompletedHonest: return "COMPLETED_HONEST";
  }
  return "?";
}

std::string ScenarioOutcome::label() const {
  if (verdict != Verdict::kBlocked) return std::string(verdict_name(verdict));
  std::string out = "BLOCKED(" + abort_reason;
  if (!abort_step.empty()) out += "@" + abort_step;
  return out + ")";
}

namespace {

bool has_markup(std::string_view s) { return s.find_first_of("<>\"&") != std::string_view::npos; }

// Injected strings that survived verbatim into a stored profile.
bool payload_stored(const Json& injected, const std::vector<client::StoredProfile>& profiles) {
  for (const auto& [key, value] : injected.items()) {
    if (!value.is_string()) continue;
    const std::string v = value.get<std::string>();
    if (!has_markup(v)) continue;
    for (const auto& p : profiles) {
      for (const std::string* field : {&p.name, &p.preferred_username, &p.email}) {
        if (field->find(v) != std::string::npos) return true;
      }
    }
  }
  return false;
}

void register_intranet(simnet::Network& net, const std::vector<Url>& targets,
                       adversary::Adversary* adversary) {
  std::vector<std::string> hosts{kIntranetHost};
  for (const auto& t : targets) hosts.push_back(t.host);
  for (const auto& host : hosts) {
    if (net.owner_of(host) != simnet::HostOwner::kUnregistered) continue;
    net.register_host(
        host, simnet::HostOwner::kHonest,
        [adversary](const HttpRequest& r) {
          if (adversary) adversary->record_ssrf_hit(r.url);
          return HttpResponse::json(Json{{"service", "intranet admin console"}});
        },
        {Principal::kClient});
  }
}

}  // namespace

ScenarioOutcome run_scenario(const ScenarioSpec& spec) {
  ScenarioOutcome out;
  out.spec = spec;

  simnet::Network net(spec.start_time);
  op::OpConfig op_config = op::default_op_config(spec.seed);
  // Issuer binding needs both halves: the OP sends iss, the client checks it.
  op_config.issue_issuer_in_auth_response = spec.defenses.require_issuer_binding;
  const std::string op_login_host = op_config.authorization_endpoint.host;
  const Url client_base = Url::parse(kClientBase);

  std::optional<op::OpenIdProvider> op;
  std::optional<client::RelyingClient> rp;
  std::optional<adversary::Adversary> adv;
  try {
    op.emplace(op_config, spec.seed);
    op->attach(net);
    rp.emplace(client::ClientConfig{client_base, spec.flow, spec.defenses}, spec.seed);
    rp->attach(net);
    if (spec.attack) {
      auto profile = adversary::AttackProfile::make(*spec.attack, op->metadata(), spec.adversary_domain,
                                                    spec.ssrf_targets);
      profile.payload_size = spec.payload_size;
      profile.lying_head = spec.lying_head;
      if (spec.injected_claims) profile.injected_claims = *spec.injected_claims;
      adv.emplace(std::move(profile), spec.seed);
      adv->attach(net);
    }
    register_intranet(net, adv ? adv->profile().ssrf_targets : spec.ssrf_targets, adv ? &*adv : nullptr);
  } catch (const Error& e) {
    fail(ErrorCode::kScenarioPanic, std::string(error_name(e.code())) + ": " + e.detail());
  }

  simnet::UserAgent victim(net, Principal::kUserAgent);
  victim.remember_login(op_login_host, {spec.victim.local, op_config.users.front().password});

  auto login_url = [&](const std::string& identity, const std::optional<std::string>& csrf) {
    Params q{{"identity", identity}};
    if (csrf) q.emplace_back("csrf", *csrf);
    return client_base.with_path("/login").with_query(std::move(q));
  };

  try {
    victim.navigate(client_base);
    if (!spec.attack) {
      victim.navigate(login_url(spec.victim.render(), victim.csrf_token(client_base.host)));
    } else if (spec.forged_initiation()) {
      // A cross-site request the attacker makes the victim's browser send:
      // it carries the victim's cookies but cannot know the CSRF token.
      victim.navigate(login_url(spec.victim.local + "@" + spec.adversary_domain, std::nullopt));
    } else {
      simnet::UserAgent attacker(net, Principal::kAdversary);
      attacker.navigate(client_base);
      attacker.navigate(login_url("oskar@" + spec.adversary_domain, attacker.csrf_token(client_base.host)));
    }
  } catch (const Error& e) {
    // A browser-side failure such as a redirect loop; the client's records
    // below still say how far the protocol got.
    out.abort_detail = std::string(error_name(e.code())) + ": " + e.detail();
  }

  if (!rp->logins().empty()) out.login = rp->logins().back();
  out.profiles = rp->profiles();
  out.registration_requests = rp->registration_requests();
  if (adv) {
    out.captures = adv->captures();
    out.redeemed = adv->redemptions();
    out.replay_attempts = adv->replays();
  }
  out.ssrf_targets_hit = out.captures.ssrf_hits;
  out.transcript = net.transcript();
  out.transcript_digest = out.transcript.digest();
  out.bytes_pulled_by_client = out.transcript.bytes_pulled_by(Principal::kClient);
  if (adv) out.injected_payload_stored = payload_stored(adv->profile().injected_claims, out.profiles);

  const bool aborted = out.login.status == client::LoginRecord::Status::kAborted;
  if (aborted) {
    out.abort_reason = std::string(error_name(*out.login.error));
    out.abort_step = out.login.step;
    out.abort_detail = out.login.detail;
  }

  bool compromised = false;
  if (spec.attack) {
    switch (*spec.attack) {
      case AttackKind::kTokenTheftCode:
        // A code alone is useless without client authentication; the theft
        // counts once a secret leaked or the code was redeemed.
        for (const auto& c : out.captures.client_credentials) compromised |= !c.client_secret.empty();
        for (const auto& r : out.redeemed) compromised |= r.via == "token";
        break;
      case AttackKind::kTokenTheftImplicit:
        compromised = !out.captures.access_tokens.empty();
        break;
      case AttackKind::kSsrf:
        compromised = !out.ssrf_targets_hit.empty();
        break;
      case AttackKind::kInjection:
        compromised = out.injected_payload_stored;
        break;
      case AttackKind::kDos:
        compromised = out.bytes_pulled_by_client >= spec.dos_threshold;
        break;
    }
  }

  if (compromised) {
    out.verdict = Verdict::kCompromised;
  } else if (!spec.attack && out.login.status == client::LoginRecord::Status::kLoggedIn) {
    out.verdict = Verdict::kCompletedHonest;
  } else {
    out.verdict = Verdict::kBlocked;
    bool replay_rejected = false;
    for (const auto& r : out.replay_attempts) replay_rejected |= r.error == "AudienceMismatch";
    if (replay_rejected) {
      // The stolen assertion is bound to the adversary's endpoint.
      out.abort_reason = "AudienceMismatch";
      out.abort_step = "3.1";
    } else if (spec.attack == AttackKind::kInjection && !aborted && spec.defenses.sanitize_userinfo) {
      out.abort_reason = "PayloadSanitized";
      out.abort_step = "3.4";
    } else if (!aborted && out.abort_reason.empty()) {
      out.abort_reason = "NotExploited";
    }
  }
  return out;
}

}  // namespace oidclab::scenarios
