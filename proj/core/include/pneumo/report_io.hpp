#pragma once

#include <iosfwd>
#include <string>

#include "pneumo/analysis.hpp"

namespace pneumo {

// JSON report, numbers with 17 significant digits. Uncertainties (w1..w8,
// wc, U) are relative; error metrics are percent.
std::string report_json(const AnalysisResult& result);

// force_kgf,x_bar_r,b,b_prime,v,f_c,w1,...,w8,wc,U; empty cells where a
// value is unavailable.
void write_report_csv(std::ostream& os, const AnalysisResult& result);

// Fixed-width table for terminals.
std::string report_summary(const AnalysisResult& result);

std::string class_label(const std::optional<double>& cls);

}  // namespace pneumo
