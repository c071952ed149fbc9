#include "distsense/errors.hpp"

namespace distsense {

std::string error_code(const Error& e) {
  if (dynamic_cast<const DomainError*>(&e)) return "domain-error";
  if (dynamic_cast<const ContractError*>(&e)) return "contract-error";
  if (dynamic_cast<const ScoreUndefinedError*>(&e)) return "score-undefined";
  if (dynamic_cast<const DegenerateWeightsError*>(&e)) return "degenerate-weights";
  if (dynamic_cast<const InitError*>(&e)) return "init-error";
  if (dynamic_cast<const ConfigError*>(&e)) return "config-error";
  if (dynamic_cast<const IngestError*>(&e)) return "ingest-error";
  return "error";
}

}  // namespace distsense
