#pragma once

#include "proofforge/signature.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace proofforge {

enum class node_status {
    pending,     // not yet visited, or awaiting a retry
    in_progress, // currently being visited
    verified,    // its snapshot verified with pending children bodiless
    exhausted,   // failed t generations in its final retry
    aborted,     // killed by global timeout or a parent rollback
};

[[nodiscard]] std::string to_string(node_status status);

using node_id = std::size_t;

// One goal in the proof search: a lemma or method signature to prove,
// plus the whole-program snapshot it was created against.
struct proof_node {
    node_id id = 0;
    std::optional<node_id> parent;
    method_signature signature;
    std::string base_code; // snapshot at creation time
    std::string textual_proof;
    std::vector<method_signature> working_list; // pending sub-lemmas, insertion order
    int generation_attempts = 0;                // within the current visit
    int retries_used = 0;                       // visits started
    double temperature = 0.0;
    node_status status = node_status::pending;
    std::vector<node_id> children; // creation order
};

// Owns the nodes; ids are indices into a stable vector. Parent links are
// acyclic by construction (a child is always created after its parent and
// points backwards), which check_acyclic() re-verifies on demand.
class proof_tree {
public:
    node_id add_root(method_signature signature, std::string base_code, std::string textual_proof,
                     double temperature);
    node_id add_child(node_id parent, method_signature signature, std::string base_code,
                      double temperature);

    [[nodiscard]] proof_node& at(node_id id);
    [[nodiscard]] const proof_node& at(node_id id) const;
    [[nodiscard]] std::size_t size() const { return _nodes.size(); }
    [[nodiscard]] node_id root() const { return 0; }

    // Walks every parent pointer to the root; false if a walk exceeds the
    // node count (a cycle) or hits an out-of-range id.
    [[nodiscard]] bool check_acyclic() const;

    // All node ids in the subtree rooted at `id`, including `id` itself.
    [[nodiscard]] std::vector<node_id> subtree(node_id id) const;

private:
    std::vector<proof_node> _nodes;
};

} // namespace proofforge
