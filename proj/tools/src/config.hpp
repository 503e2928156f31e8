#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "syspredict/copula.hpp"
#include "syspredict/marginal.hpp"
#include "syspredict/montecarlo.hpp"
#include "syspredict/predictor.hpp"
#include "syspredict/structure.hpp"

namespace syspredict::cli {

/// Parsed run configuration. Sections a command does not use may be absent.
struct RunConfig {
  nlohmann::json raw;

  std::vector<SystemStructure> structures;  // T1, [T2,] T
  std::optional<SurvivalCopula> copula;
  std::optional<Marginal> marginal;
  std::optional<PredictionCase> kind;

  std::vector<double> grid;
  std::optional<double> t1;
  std::optional<double> t2;
  std::vector<double> w;
  std::vector<double> levels{0.5, 0.9};
  BandKind band = BandKind::kCentered;

  std::uint64_t seed = 1;
  std::size_t size = 0;

  std::vector<int> coverage_k;
  CoverageOptions coverage;

  std::vector<double> taus;
  bool ols = false;
  std::string input;
  std::string x_column = "t1";
  std::string y_column = "t";
};

/// Throws Error(kConfig) on schema violations, Error(kIo) if unreadable.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const nlohmann::json& doc);

SystemStructure parse_structure(const nlohmann::json& j);
SurvivalCopula parse_copula(const nlohmann::json& j, int n);
Marginal parse_marginal(const nlohmann::json& j);
PredictionCase parse_case(const std::string& tag);

}  // namespace syspredict::cli
