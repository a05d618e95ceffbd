#pragma once

#include "proofforge/llm.hpp"
#include "proofforge/plan.hpp"
#include "proofforge/proof_tree.hpp"
#include "proofforge/refactor.hpp"
#include "proofforge/task.hpp"
#include "proofforge/transcript.hpp"
#include "proofforge/verifier.hpp"

#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <string>

namespace proofforge::engine {

struct attempt_result {
    run_status status = run_status::failed;
    std::string final_program; // verified program on success
    std::optional<mapping_report> restore_report;
    int lemma_count = 0; // verified helper lemmas in the final proof
    double wall_time_seconds = 0.0;
};

struct task_result {
    bool succeeded = false;
    attempt_result best;                          // the successful attempt, or the last one
    std::vector<run_transcript> transcripts;      // one per attempt, in order
    int attempts_used = 0;
};

// Drives one task: optional code decomposition, tree initialization, DFS
// exploration with rollback and temperature annealing, restoration, and a
// fresh final verification. Single-threaded per instance; gateways are
// the only shared resources.
class proof_engine {
public:
    proof_engine(llm::gateway& llm, verifier::client& verify);

    // Builds the initial tree: one pending root carrying the task program
    // and outline. With a plan, the root is the outer method and every
    // lifted method's signature is pre-seeded into its working list.
    [[nodiscard]] proof_tree init_tree(const verification_task& task,
                                       const decomposition_plan* plan) const;

    // DFS over the tree in working-list order. Child failure rolls the
    // parent back with its temperature lowered per retry; root exhaustion
    // aborts. Returns the final snapshot on success.
    run_status explore(proof_tree& tree, const verification_task& task,
                       const decomposition_plan* plan, run_transcript& transcript,
                       std::string& final_code);

    // Full pipeline with up to verify_at_k independent attempts, stopping
    // at the first success. The reported program is re-verified once,
    // fresh, before success is claimed.
    [[nodiscard]] task_result run_task(const verification_task& task);

private:
    struct visit_outcome {
        enum class kind { verified, failed, gate_rejected, timed_out } result;
        std::string merged_code; // final snapshot when verified
    };

    struct run_state {
        const verification_task* task = nullptr;
        const decomposition_plan* plan = nullptr;
        run_transcript* transcript = nullptr;
        std::string current_code;
        std::chrono::steady_clock::time_point deadline;
        std::map<std::string, std::string> reuse_pool; // normalized signature -> definition
        int llm_calls = 0;
        int verifier_runs = 0;
    };

    visit_outcome visit_node(proof_tree& tree, node_id id, run_state& state);

    // One verification of the node's snapshot with pending goals bodiless.
    verifier_report verify_snapshot(const std::string& code,
                                    const std::vector<method_signature>& pending, node_id node,
                                    int visit, run_state& state);

    llm_exchange call_llm(const std::string& template_id, const substitution_list& subs,
                          double temperature, node_id node, int visit, bool counts_generation,
                          run_state& state);

    bool gate_verifiability(proof_tree& tree, node_id id, run_state& state, bool& out_verdict);

    // Repair dispatch helpers; each returns true when it changed the
    // snapshot and the caller should re-verify.
    bool repair_failing_assertion(proof_tree& tree, node_id id, std::string& code,
                                  const diagnostic& diag, run_state& state);
    bool repair_failing_invariant(proof_tree& tree, node_id id, std::string& code,
                                  const diagnostic& diag, run_state& state);
    bool handle_weak_callee_contract(proof_tree& tree, node_id id, std::string& code,
                                     const diagnostic& diag, run_state& state);

    bool propose_sublemma(proof_tree& tree, node_id id, const std::string& goal_description,
                          const std::string& code, run_state& state, method_signature& out_sig,
                          std::string& out_call);

    // Keeps a pending lemma only when removing its call breaks the parent
    // snapshot (one extra verifier run).
    bool lemma_is_useful(const std::string& code_with_call, const std::string& code_without_call,
                         const std::vector<method_signature>& pending, node_id node, int visit,
                         run_state& state);

    [[nodiscard]] bool duplicate_or_ancestor_goal(const proof_tree& tree, node_id id,
                                                  const method_signature& proposed) const;

    [[nodiscard]] bool past_deadline(const run_state& state) const;

    void harvest_reusable(proof_tree& tree, node_id subtree_root, run_state& state);
    [[nodiscard]] std::string reuse_pool_text(const run_state& state) const;

    llm::gateway& _llm;
    verifier::client& _verify;
};

} // namespace proofforge::engine
