#include "proofforge/proof_tree.hpp"

#include "proofforge/errors.hpp"

namespace proofforge {

std::string to_string(node_status status) {
    switch (status) {
        case node_status::pending: return "pending";
        case node_status::in_progress: return "in_progress";
        case node_status::verified: return "verified";
        case node_status::exhausted: return "exhausted";
        case node_status::aborted: return "aborted";
    }
    return "pending";
}

node_id proof_tree::add_root(method_signature signature, std::string base_code,
                             std::string textual_proof, double temperature) {
    if (!_nodes.empty()) {
        throw error("proof tree already has a root");
    }
    proof_node root;
    root.id = 0;
    root.signature = std::move(signature);
    root.base_code = std::move(base_code);
    root.textual_proof = std::move(textual_proof);
    root.temperature = temperature;
    _nodes.push_back(std::move(root));
    return 0;
}

node_id proof_tree::add_child(node_id parent, method_signature signature, std::string base_code,
                              double temperature) {
    if (parent >= _nodes.size()) {
        throw error("add_child: parent id out of range");
    }
    proof_node child;
    child.id = _nodes.size();
    child.parent = parent;
    child.signature = std::move(signature);
    child.base_code = std::move(base_code);
    child.temperature = temperature;
    _nodes.push_back(std::move(child));
    _nodes[parent].children.push_back(_nodes.back().id);
    return _nodes.back().id;
}

proof_node& proof_tree::at(node_id id) {
    if (id >= _nodes.size()) throw error("proof node id out of range");
    return _nodes[id];
}

const proof_node& proof_tree::at(node_id id) const {
    if (id >= _nodes.size()) throw error("proof node id out of range");
    return _nodes[id];
}

bool proof_tree::check_acyclic() const {
    for (const auto& node : _nodes) {
        std::size_t hops = 0;
        std::optional<node_id> current = node.parent;
        while (current) {
            if (*current >= _nodes.size()) return false;
            if (++hops > _nodes.size()) return false;
            current = _nodes[*current].parent;
        }
    }
    return true;
}

std::vector<node_id> proof_tree::subtree(node_id id) const {
    std::vector<node_id> result;
    std::vector<node_id> stack{id};
    while (!stack.empty()) {
        node_id current = stack.back();
        stack.pop_back();
        result.push_back(current);
        for (node_id child : at(current).children) {
            stack.push_back(child);
        }
    }
    return result;
}

} // namespace proofforge
