#pragma once

#include "autosg/codegen.hpp"

#include <vector>

namespace autosg {

/// Ordered evaluation pool: the initial artifact followed by the refined ones.
struct CandidatePool {
    std::vector<SolverArtifact> members;

    void validate(const PipelineConfig& cfg) const;
    const SolverArtifact& initial() const { return members.front(); }
};

/// Reverse-engineer a semantic description of the initial solver; stores it
/// into `init.description` and returns it. Rejects responses carrying code.
std::string describe_solver(CodegenContext& ctx, SolverArtifact& init,
                            int* transcript_seq = nullptr);

/// Generate cfg.n_refined candidates via independent calls, each structurally
/// checked; per-slot retry budget of 2 regenerations. Logs marker retention
/// per candidate through `diag` when provided.
std::vector<SolverArtifact> refine_candidates(
    CodegenContext& ctx, const SolverArtifact& init, const PaperIdentity& paper,
    std::vector<std::string>* diag = nullptr);

/// Fraction of init's marker lines whose text survives in the candidate.
double marker_retention(const SolverArtifact& init, const SolverArtifact& candidate);

CandidatePool assemble_pool(const SolverArtifact& init,
                            const std::vector<SolverArtifact>& refined,
                            const PipelineConfig& cfg);

} // namespace autosg
