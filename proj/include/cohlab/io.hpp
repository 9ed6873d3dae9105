#pragma once

// Document formats. Matrices are {dim_rows, dim_cols, entries} with entries a
// row-major array of [re, im] pairs; states add a dim field and ensembles are
// {dim, members: [{p, unitary}]}. Reports go out as JSON or as
// comma-separated text with a header row.

#include "cohlab/channels.hpp"
#include "cohlab/erasure.hpp"
#include "cohlab/typicality.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace cohlab {

using Json = nlohmann::ordered_json;

Json matrix_to_json(const ComplexMatrix& m);
// kParseError on missing fields, wrong types or an entry count that does not
// match dim_rows * dim_cols.
ComplexMatrix matrix_from_json(const Json& doc);

Json state_to_json(const DensityMatrix& rho);
// Runs full state validation on the loaded matrix.
DensityMatrix state_from_json(const Json& doc);

Json ensemble_to_json(const UnitaryEnsemble& e);
UnitaryEnsemble ensemble_from_json(const Json& doc);

Json typical_set_to_json(const TypicalSet& set);

// CSV column order for erasure reports:
// n,eps,N,seed,achieved_eps_witness,achieved_eps_tau,entropy_exchange,lemma1_bound,rate,c_r
const std::vector<std::string>& erasure_columns();
std::vector<std::string> erasure_row(const ErasureReport& r);
Json erasure_report_to_json(const ErasureReport& r);

// Fixed-format number text used in every tabular report.
std::string format_double(double x);

std::string csv_line(const std::vector<std::string>& fields);

Json parse_json(std::string_view text);
Json read_json_file(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace cohlab
