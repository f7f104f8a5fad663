// Copyright 2026 The RaftGP Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "raftgp/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iterator>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "raftgp/error.hpp"

namespace raftgp {

Graph Graph::from_edges(Index num_nodes, std::span<const Edge> edges) {
  if (num_nodes < 0 || num_nodes > std::numeric_limits<NodeId>::max())
    throw ParameterError("node count out of range: " + std::to_string(num_nodes));
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= num_nodes || v >= num_nodes)
      throw BoundsError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                        ") outside node range [0, " + std::to_string(num_nodes) +
                        ")");
  }

  // Counting sort of both orientations into row buckets.
  std::vector<std::int64_t> counts(num_nodes + 1, 0);
  for (const auto& [u, v] : edges) {
    if (u == v) continue;
    ++counts[u + 1];
    ++counts[v + 1];
  }
  for (Index i = 0; i < num_nodes; ++i) counts[i + 1] += counts[i];
  std::vector<NodeId> scratch(counts[num_nodes]);
  std::vector<std::int64_t> cursor(counts.begin(), counts.end() - 1);
  for (const auto& [u, v] : edges) {
    if (u == v) continue;
    scratch[cursor[u]++] = v;
    scratch[cursor[v]++] = u;
  }

  Graph g;
  g.offsets_.assign(num_nodes + 1, 0);
  g.neighbors_.reserve(scratch.size());
  for (Index i = 0; i < num_nodes; ++i) {
    auto first = scratch.begin() + counts[i];
    auto last = scratch.begin() + counts[i + 1];
    std::sort(first, last);
    last = std::unique(first, last);
    g.neighbors_.insert(g.neighbors_.end(), first, last);
    g.offsets_[i + 1] = static_cast<std::int64_t>(g.neighbors_.size());
  }
  g.neighbors_.shrink_to_fit();
  return g;
}

std::vector<Index> Graph::degrees() const {
  std::vector<Index> d(num_nodes());
  for (Index i = 0; i < num_nodes(); ++i) d[i] = offsets_[i + 1] - offsets_[i];
  return d;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (NodeId i = 0; i < num_nodes(); ++i)
    for (NodeId j : neighbors(i))
      if (i < j) out.emplace_back(i, j);
  return out;
}

bool Graph::has_edge(NodeId i, NodeId j) const {
  const auto nb = neighbors(i);
  return std::binary_search(nb.begin(), nb.end(), j);
}

Partition::Partition(std::vector<BlockId> assignment, BlockId num_blocks)
    : assignment_(std::move(assignment)), num_blocks_(num_blocks) {
  if (num_blocks_ < 0) throw ParameterError("negative block count");
  if (assignment_.empty() && num_blocks_ != 0)
    throw ParameterError("empty assignment with nonzero block count");
  std::vector<char> used(num_blocks_, 0);
  for (std::size_t v = 0; v < assignment_.size(); ++v) {
    const BlockId b = assignment_[v];
    if (b < 0 || b >= num_blocks_)
      throw ParameterError("node " + std::to_string(v) + " has block id " +
                           std::to_string(b) + " outside [0, " +
                           std::to_string(num_blocks_) + ")");
    used[b] = 1;
  }
  for (BlockId b = 0; b < num_blocks_; ++b)
    if (!used[b]) throw ParameterError("block " + std::to_string(b) + " is empty");
}

Partition Partition::from_labels(std::span<const std::int64_t> labels) {
  std::vector<std::int64_t> distinct(labels.begin(), labels.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<BlockId> assignment(labels.size());
  for (std::size_t v = 0; v < labels.size(); ++v)
    assignment[v] = static_cast<BlockId>(
        std::lower_bound(distinct.begin(), distinct.end(), labels[v]) -
        distinct.begin());
  return Partition(std::move(assignment), static_cast<BlockId>(distinct.size()));
}

std::vector<std::vector<NodeId>> Partition::blocks() const {
  std::vector<std::vector<NodeId>> out(num_blocks_);
  for (std::size_t v = 0; v < assignment_.size(); ++v)
    out[assignment_[v]].push_back(static_cast<NodeId>(v));
  return out;
}

std::vector<Index> Partition::block_sizes() const {
  std::vector<Index> sizes(num_blocks_, 0);
  for (BlockId b : assignment_) ++sizes[b];
  return sizes;
}

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path.string());
  return std::move(buf).str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

// Splits a line into whitespace-separated integer fields.
std::optional<std::vector<std::int64_t>> parse_ints(std::string_view line) {
  std::vector<std::int64_t> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i == line.size()) break;
    std::int64_t value = 0;
    const auto [ptr, ec] =
        std::from_chars(line.data() + i, line.data() + line.size(), value);
    if (ec != std::errc{}) return std::nullopt;
    const std::size_t next = static_cast<std::size_t>(ptr - line.data());
    if (next < line.size() && line[next] != ' ' && line[next] != '\t')
      return std::nullopt;
    out.push_back(value);
    i = next;
  }
  return out;
}

template <typename Fn>
void for_each_line(const std::string& text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    ++line_no;
    fn(line_no, trim(std::string_view(text).substr(pos, end - pos)));
    pos = end + 1;
  }
}

}  // namespace

Graph load_edge_list(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  std::optional<Index> declared;
  std::vector<Edge> edges;
  Index max_id = -1;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (line.empty()) return;
    if (line.front() == '#') {
      auto rest = trim(line.substr(1));
      if (rest.size() >= 2 && rest[0] == 'N' && (rest[1] == ' ' || rest[1] == '\t')) {
        const auto fields = parse_ints(rest.substr(2));
        if (!fields || fields->size() != 1 || (*fields)[0] < 0)
          throw ParseError(path.string(), line_no, "malformed node-count header");
        if (!edges.empty())
          throw ParseError(path.string(), line_no, "node-count header after edges");
        declared = (*fields)[0];
      }
      return;
    }
    const auto fields = parse_ints(line);
    if (!fields || fields->size() != 2)
      throw ParseError(path.string(), line_no, "expected two integer node ids");
    const auto u = (*fields)[0];
    const auto v = (*fields)[1];
    if (u < 0 || v < 0)
      throw ParseError(path.string(), line_no, "negative node id");
    if (u > std::numeric_limits<NodeId>::max() ||
        v > std::numeric_limits<NodeId>::max())
      throw BoundsError(path.string() + ":" + std::to_string(line_no) +
                        ": node id exceeds supported range");
    if (declared && (u >= *declared || v >= *declared))
      throw BoundsError(path.string() + ":" + std::to_string(line_no) +
                        ": node id >= declared N=" + std::to_string(*declared));
    max_id = std::max<Index>(max_id, std::max(u, v));
    edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
  });
  return Graph::from_edges(declared.value_or(max_id + 1), edges);
}

void save_edge_list(const Graph& g, const std::filesystem::path& path) {
  std::string out;
  const auto edges = g.edges();
  NodeId max_id = -1;
  for (const auto& [i, j] : edges) max_id = std::max(max_id, j);
  // The header is only needed when trailing isolated nodes would be lost.
  if (g.num_nodes() != max_id + 1)
    out += "# N " + std::to_string(g.num_nodes()) + "\n";
  for (const auto& [i, j] : edges) {
    out += std::to_string(i);
    out += ' ';
    out += std::to_string(j);
    out += '\n';
  }
  write_file(path, out);
}

Partition load_partition(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  std::vector<std::pair<std::int64_t, std::int64_t>> rows;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (line.empty() || line.front() == '#') return;
    const auto fields = parse_ints(line);
    if (!fields || fields->size() != 2)
      throw ParseError(path.string(), line_no, "expected \"node_id block_id\"");
    if ((*fields)[0] < 0)
      throw ParseError(path.string(), line_no, "negative node id");
    rows.emplace_back((*fields)[0], (*fields)[1]);
  });
  const auto n = static_cast<std::int64_t>(rows.size());
  std::vector<std::int64_t> labels(n);
  std::vector<char> seen(n, 0);
  for (const auto& [node, block] : rows) {
    if (node >= n)
      throw BoundsError(path.string() + ": node id " + std::to_string(node) +
                        " but only " + std::to_string(n) + " entries");
    if (seen[node])
      throw DataError(path.string() + ": node " + std::to_string(node) +
                      " listed twice");
    seen[node] = 1;
    labels[node] = block;
  }
  return Partition::from_labels(labels);
}

void save_partition(const Partition& p, const std::filesystem::path& path) {
  std::string out;
  for (Index v = 0; v < p.size(); ++v) {
    out += std::to_string(v);
    out += ' ';
    out += std::to_string(p[v]);
    out += '\n';
  }
  write_file(path, out);
}

}  // namespace raftgp
