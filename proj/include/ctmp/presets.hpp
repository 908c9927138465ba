#pragma once

#include <string>

#include "ctmp/rate_model.hpp"

namespace ctmp {

/// 7-state CFTR gating model; states "4" and "5" conduct.
RateModel cftr_model();

/// 3-state chain with symmetric inner rates: w12 = w21 = a, w23 = w32 = b,
/// no direct 1<->3 rate; state "3" is observable.
RateModel chain3_model(double a, double b);

/// Irreversible 3-state loop 1 -> 2 -> 3 -> 1 with w21 = 1; state "1" is
/// observable. w32 and w13 are the hidden-block rates.
RateModel loop3_model(double w32, double w13);

bool is_preset_spec(const std::string& spec);

/// Builds a model from "preset:cftr", "preset:chain3(a,b)" or
/// "preset:loop3(w32,w13)".
RateModel make_preset(const std::string& spec);

/// Dispatches to make_preset for "preset:" specs, otherwise loads a model
/// JSON file from the given path.
RateModel load_model_spec(const std::string& path_or_preset);

std::string preset_help();

}  // namespace ctmp
