#pragma once

#include "anosov/exponents.hpp"
#include "anosov/hilbert.hpp"
#include "anosov/limit_set.hpp"
#include "anosov/verify.hpp"
#include "anosov/words.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace anosov {

/// Rounds to 12 significant digits (the precision of every export).
double round12(double x);
/// Shortest text that reads back as round12(x); "nan", "inf", "-inf" otherwise.
std::string format_number(double x);

// CSV exports. Each writer emits the header once and one row per call.

void write_ball_header(std::ostream& out, int n);
void write_ball_row(std::ostream& out, const GeneratorSet& gs, const BallEntry& e);

void write_conjugacy_header(std::ostream& out, int n);
void write_conjugacy_row(std::ostream& out, const GeneratorSet& gs, const ConjClassEntry& e);

void write_points_header(std::ostream& out, int n);
void write_points_row(std::ostream& out, const GeneratorSet& gs, const SymLimitPoint& p);

void write_pairs_header(std::ostream& out);
void write_pairs_row(std::ostream& out, const ComparisonRow& row);

// JSON documents, keys sorted, numbers via round12.

std::string estimate_json(const ExponentEstimate& e);
std::string dimension_json(const DimensionEstimate& d);
std::string comparison_json(const ComparisonResult& c, const DimensionEstimate* quasi_dim,
                            const ExponentEstimate* orbit_exponent);
/// The run time is nondeterministic and only written when asked for.
std::string report_json(const VerificationReport& r, bool include_runtime = false);

}  // namespace anosov
