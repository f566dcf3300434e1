// Copyright 2026 The oidclab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

#include "scenarios/matrix.hpp"
#include "scenarios/world.hpp"

namespace oidclab::scenarios {

enum class ReportFormat { kJson, kText };

// Throws kInvalidArgument.
ReportFormat report_format_from_name(std::string_view name);

// {verdict, label, abort, captures{codes, client_credentials, access_tokens,
// assertions}, ssrf_hits, redeemed, replay_attempts, bytes,
// injected_payload_stored, login, transcript_ref, scenario}
Json outcome_to_json(const ScenarioOutcome& outcome);
Json matrix_to_json(const MatrixResult& matrix);

// JSON is compact and newline-terminated; equal outcomes give equal bytes.
std::string render_report(const ScenarioOutcome& outcome, ReportFormat format);
// One row per attack, one column per defense config.
std::string render_matrix(const MatrixResult& matrix, ReportFormat format);

}  // namespace oidclab::scenarios
