#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "echo2d/bath.hpp"
#include "echo2d/delays.hpp"
#include "echo2d/exciton_model.hpp"
#include "echo2d/lineshape.hpp"
#include "echo2d/population.hpp"

namespace echo2d {

enum class Pathway { SE, GSB, ESA, Total };

const char* to_string(Pathway p);
Pathway pathway_from_string(const std::string& name);

/// Restricts tuple sums by their t2 phase: population terms (m3 == m5) or
/// coherence terms (m3 != m5). GSB tuples count as population terms.
enum class TupleFilter { All, Population, Coherence };

struct ResponseOptions {
  RelaxationMode relaxation = RelaxationMode::Reduced;
  bool case2_decoherence = false;  // multiply 1 - e^P by e^-D
  bool prune = true;
  TupleFilter filter = TupleFilter::All;
};

/// One index tuple of a pathway sum with everything needed to evaluate it.
struct TupleTerm {
  std::array<int, 6> m{};  // singles (global index); GSB uses the first four
  int n1 = -1;             // doubles (global index), ESA only
  int n2 = -1;
  double dipole = 0.0;
  double nu1 = 0.0;  // phase e^{i (nu1 t1 + nu2 t2 + nu3 t3)}, cm^-1
  double nu2 = 0.0;
  double nu3 = 0.0;
  bool fully_guarded = false;
  std::vector<DecoherenceAtom> decoherence;
  std::vector<RelaxationAtom> relaxation;
};

/// R(t1, t3) at fixed t2; rows follow t1, columns follow t3.
struct ResponseGrid {
  Pathway pathway = Pathway::Total;
  Eigen::VectorXd t1_axis;
  Eigen::VectorXd t3_axis;
  double t2 = 0.0;
  Eigen::MatrixXcd values;
};

/// Uniform axis 0, dt, ..., (n-1) dt in fs.
Eigen::VectorXd uniform_axis(int n, double dt);

class ResponseEngine {
 public:
  ResponseEngine(const StationaryBasis& basis, const Bath& bath, ResponseOptions options = {});

  const StationaryBasis& basis() const noexcept { return *basis_; }
  const DecoherenceTerms& decoherence() const noexcept { return decoherence_; }
  const RelaxationTerms& relaxation() const noexcept { return relaxation_; }
  const ResponseOptions& options() const noexcept { return options_; }

  /// Tuples that enter the pathway sum (after pruning and filtering).
  std::vector<TupleTerm> tuples(Pathway pathway) const;

  /// Cumulant pre-exponential factor of one tuple.
  std::complex<double> f_factor(const TupleTerm& term, const Delays& t) const;

  /// Pointwise evaluation straight from the term definitions.
  std::complex<double> point(Pathway pathway, const Delays& t) const;

  /// Grid evaluation with shared kernel caches; t1/t3 parallel over rows.
  ResponseGrid grid(Pathway pathway, const Eigen::VectorXd& t1_axis, double t2,
                    const Eigen::VectorXd& t3_axis) const;

 private:
  TupleTerm make_term(Pathway pathway, const std::array<int, 6>& m, int n1, int n2) const;
  bool keep(const TupleTerm& term, Pathway pathway) const;

  const StationaryBasis* basis_;
  ResponseOptions options_;
  DecoherenceTerms decoherence_;
  RelaxationTerms relaxation_;
};

/// K (SE + GSB - ESA) pointwise. Any grid pointer may be null (pathway off),
/// but at least one must be present.
ResponseGrid assemble_spe(const ResponseGrid* se, const ResponseGrid* gsb, const ResponseGrid* esa,
                          double prefactor = 1.0);

}  // namespace echo2d
