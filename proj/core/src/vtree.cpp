#include "twc/vtree.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <sstream>

namespace twc {

std::vector<int> VTree::postorder() const {
  std::vector<int> order;
  order.reserve(nodes.size());
  std::vector<std::pair<int, bool>> stack{{root, false}};
  while (!stack.empty()) {
    auto [n, expanded] = stack.back();
    stack.pop_back();
    if (expanded) {
      order.push_back(n);
      continue;
    }
    stack.push_back({n, true});
    for (int i = 1; i >= 0; --i)
      if (nodes[n].child[i] >= 0) stack.push_back({nodes[n].child[i], false});
  }
  return order;
}

std::vector<Bitset> VTree::leaves_below() const {
  std::vector<Bitset> below(nodes.size(), Bitset(num_vars));
  for (int n : postorder()) {
    if (nodes[n].var >= 0) below[n].set(nodes[n].var);
    for (int c : nodes[n].child)
      if (c >= 0) below[n] |= below[c];
  }
  return below;
}

bool VTree::is_proper() const {
  std::vector<int> seen(num_vars, 0);
  for (int n : postorder()) {
    const Node& node = nodes[n];
    if (node.var >= 0) {
      if (node.n_children() != 0 || node.var >= num_vars) return false;
      ++seen[node.var];
    } else if (node.n_children() != 2) {
      return false;
    }
  }
  for (int c : seen)
    if (c != 1) return false;
  return true;
}

namespace {

int balanced_subtree(VTree& vt, const std::vector<int>& order, int lo, int hi) {
  if (hi - lo == 1) return vt.add_leaf(order[lo]);
  int mid = lo + (hi - lo) / 2;
  int left = balanced_subtree(vt, order, lo, mid);
  int right = balanced_subtree(vt, order, mid, hi);
  int node = vt.add_node();
  vt.attach(node, left);
  vt.attach(node, right);
  return node;
}

}  // namespace

VTree balanced_vtree(const std::vector<int>& leaf_order) {
  if (leaf_order.empty()) fail(Errc::bad_input, "v-tree needs at least one leaf");
  VTree vt;
  vt.num_vars = static_cast<int>(leaf_order.size());
  vt.root = balanced_subtree(vt, leaf_order, 0, static_cast<int>(leaf_order.size()));
  return vt;
}

namespace {

int parse_node(const std::string& s, size_t& pos, VTree& vt, int num_vars) {
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos >= s.size()) fail(Errc::parse_error, "v-tree: unexpected end of input");
  if (s[pos] == '(') {
    ++pos;
    int node = vt.add_node();
    while (true) {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
      if (pos >= s.size()) fail(Errc::parse_error, "v-tree: missing ')'");
      if (s[pos] == ')') {
        ++pos;
        break;
      }
      int child = parse_node(s, pos, vt, num_vars);
      vt.attach(node, child);
    }
    return node;
  }
  size_t start = pos;
  while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])))) ++pos;
  if (start == pos) fail(Errc::parse_error, "v-tree: expected leaf id or '('");
  int var = std::stoi(s.substr(start, pos - start)) - 1;
  if (var < 0 || var >= num_vars) fail(Errc::parse_error, "v-tree: leaf id out of range");
  return vt.add_leaf(var);
}

void write_node(const VTree& vt, int n, std::ostringstream& out) {
  const VTree::Node& node = vt.nodes[n];
  if (node.var >= 0) {
    out << node.var + 1;
    return;
  }
  out << '(';
  bool first = true;
  for (int c : node.child)
    if (c >= 0) {
      if (!first) out << ' ';
      first = false;
      write_node(vt, c, out);
    }
  out << ')';
}

}  // namespace

VTree parse_vtree(std::istream& in, int num_vars) {
  std::string all((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  VTree vt;
  vt.num_vars = num_vars;
  size_t pos = 0;
  vt.root = parse_node(all, pos, vt, num_vars);
  while (pos < all.size()) {
    if (!std::isspace(static_cast<unsigned char>(all[pos])))
      fail(Errc::parse_error, "v-tree: trailing characters");
    ++pos;
  }
  return vt;
}

std::string write_vtree(const VTree& vt) {
  std::ostringstream out;
  write_node(vt, vt.root, out);
  out << '\n';
  return out.str();
}

}  // namespace twc
