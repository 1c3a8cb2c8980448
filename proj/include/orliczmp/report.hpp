#pragma once

#include "orliczmp/hypothesis.hpp"
#include "orliczmp/mountain_pass.hpp"
#include "orliczmp/orlicz_space.hpp"

#include <iosfwd>

namespace orliczmp {

// Structured text: one "key = value" pair per line, numbers in shortest
// round-trip form. Verdicts take one line each:
//   verdict.A3 = fail margin=-3.5 t=-1 x=-0.77,0.63 note="..."

void write_report(std::ostream& os, const SimonenkoIndices& ix);
void write_report(std::ostream& os, const Delta2Report& d);
void write_report(std::ostream& os, const Nabla2Report& n);
void write_report(std::ostream& os, const ConjugateResult& c);
void write_report(std::ostream& os, const SpaceReport& r);
void write_report(std::ostream& os, const Verdict& v);
void write_report(std::ostream& os, const HypothesisReport& r);
void write_report(std::ostream& os, const RimReport& r);
void write_report(std::ostream& os, const SolveReport& r);
void write_report(std::ostream& os, const CertReport& c);

/// iter,max_index,J_max,grad_norm,step
void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& trace);

}  // namespace orliczmp
