#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "twc/util.hpp"

namespace twc {

// Rooted tree with at most two ordered children per node; variable leaves
// carry var >= 0. Proper v-trees (as used for treesplitwidth) are binary with
// leaves in bijection with the variables; the tree emitted by the compiler
// additionally contains unary nodes and childless non-variable nodes, which
// the structuredness check tolerates.
struct VTree {
  struct Node {
    int parent = -1;
    std::array<int, 2> child{-1, -1};
    int var = -1;

    int n_children() const { return (child[0] >= 0) + (child[1] >= 0); }
  };

  std::vector<Node> nodes;
  int root = 0;
  int num_vars = 0;

  int add_leaf(int var) {
    nodes.push_back({-1, {-1, -1}, var});
    return static_cast<int>(nodes.size()) - 1;
  }
  int add_node() {
    nodes.push_back({-1, {-1, -1}, -1});
    return static_cast<int>(nodes.size()) - 1;
  }
  void attach(int parent, int child) {
    Node& p = nodes[parent];
    if (p.child[0] < 0)
      p.child[0] = child;
    else if (p.child[1] < 0)
      p.child[1] = child;
    else
      fail(Errc::bad_input, "v-tree node already has two children");
    nodes[child].parent = parent;
  }

  // per-node bitset of variables among the node's descendants
  std::vector<Bitset> leaves_below() const;
  // every variable 0..num_vars-1 appears exactly once as a leaf and internal
  // nodes are binary
  bool is_proper() const;
  std::vector<int> postorder() const;
};

// balanced proper v-tree whose left-to-right leaves follow `leaf_order`
VTree balanced_vtree(const std::vector<int>& leaf_order);

// nested parenthesized leaf ids, 1-based: "((1 2) (3 4))"
VTree parse_vtree(std::istream& in, int num_vars);
std::string write_vtree(const VTree& vt);

}  // namespace twc
