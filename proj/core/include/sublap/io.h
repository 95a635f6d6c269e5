#ifndef SUBLAP_IO_H_
#define SUBLAP_IO_H_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sublap/analysis.h"
#include "sublap/common.h"
#include "sublap/laplacian.h"
#include "sublap/lattice.h"
#include "sublap/regression.h"
#include "sublap/semisup.h"
#include "sublap/submodular.h"

namespace sublap {

// File could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

struct LabelsBlock {
  std::vector<std::pair<int, double>> fixed;     // vertex -> x value
  std::vector<std::pair<int, double>> boundary;  // vertex -> b value
};

struct ProblemDocument {
  SubmodularTransformation f{1, {}};
  std::optional<Vector> b;
  std::optional<LabelsBlock> labels;
};

// Errors carry "line L" of the offending value (ValidationError).
ProblemDocument parse_problem(std::string_view text);
ProblemDocument read_problem(const std::string& path);
std::string serialize(const ProblemDocument& doc);

// Requires a labels block.
LabeledProblem labeled_problem(const ProblemDocument& doc);

struct SolverMeta {
  double tolerance = 1e-8;
  std::string method = "descent";
};

struct SolutionDocument {
  Solution solution;
  SolverMeta solver;
};

std::string serialize(const SolutionDocument& doc);
SolutionDocument parse_solution(std::string_view text);

std::string serialize(const RegressionResult& r);
RegressionResult parse_regression(std::string_view text);

struct ResistanceDocument {
  int source = 0;
  int target = 0;
  ResistanceValue resistance;
};

std::string serialize(const ResistanceDocument& doc);
ResistanceDocument parse_resistance(std::string_view text);

std::string serialize(const CentralityReport& report);
CentralityReport parse_centrality(std::string_view text);

std::string serialize(const DistributiveLattice& lattice);
DistributiveLattice parse_lattice(std::string_view text);

// CSV with "inf" for +inf. Vertex names come from the ground set labels
// when present.
std::string resistance_csv(const SubmodularTransformation& f, const std::vector<double>& matrix);
std::string centrality_csv(const SubmodularTransformation& f, const CentralityReport& report);
std::string labels_csv(const SubmodularTransformation& f, std::span<const double> x,
                       const VertexSet& unlabeled, const std::vector<int>& labels);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace sublap

#endif  // SUBLAP_IO_H_
