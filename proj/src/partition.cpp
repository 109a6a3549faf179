#include "snec/partition.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace snec {

namespace {

void canonicalize(std::vector<std::vector<int>>& blocks) {
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::erase_if(blocks, [](const std::vector<int>& b) { return b.empty(); });
  std::sort(blocks.begin(), blocks.end(),
            [](const std::vector<int>& x, const std::vector<int>& y) {
              return x.front() < y.front();
            });
}

}  // namespace

Partition Partition::of_blocks(int n, std::vector<std::vector<int>> blocks) {
  if (n < 1) throw std::invalid_argument("partition: ground set must be nonempty");
  canonicalize(blocks);
  Partition p;
  p.n_ = n;
  p.blocks_ = std::move(blocks);
  p.block_of_.assign(n + 1, -1);
  for (int i = 0; i < static_cast<int>(p.blocks_.size()); ++i) {
    for (int x : p.blocks_[i]) {
      if (x < 1 || x > n) throw std::invalid_argument("partition: element out of range");
      if (p.block_of_[x] != -1) throw std::invalid_argument("partition: duplicated element");
      p.block_of_[x] = i;
    }
  }
  for (int x = 1; x <= n; ++x)
    if (p.block_of_[x] == -1) throw std::invalid_argument("partition: element not covered");
  return p;
}

Partition Partition::singletons(int n) {
  std::vector<std::vector<int>> blocks(n);
  for (int x = 1; x <= n; ++x) blocks[x - 1] = {x};
  return of_blocks(n, std::move(blocks));
}

Partition Partition::one_block(int n) {
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 1);
  return of_blocks(n, {std::move(all)});
}

int Partition::block_index_of(int x) const {
  if (x < 1 || x > n_) throw std::domain_error("partition: element out of range");
  return block_of_[x];
}

bool Partition::is_simple() const {
  int big = 0;
  for (const auto& b : blocks_)
    if (b.size() > 1) ++big;
  return big <= 1;
}

Partition Partition::restrict_to(int m) const {
  if (m < 1 || m > n_) throw std::domain_error("restrict: target size out of range");
  std::vector<std::vector<int>> blocks;
  for (const auto& b : blocks_) {
    std::vector<int> kept;
    for (int x : b)
      if (x <= m) kept.push_back(x);
    if (!kept.empty()) blocks.push_back(std::move(kept));
  }
  return of_blocks(m, std::move(blocks));
}

Partition coag(const Partition& p, const Partition& recipe) {
  if (recipe.ground_size() < p.block_count())
    throw std::domain_error("coag: recipe smaller than block count");
  std::vector<std::vector<int>> out;
  out.reserve(recipe.block_count());
  for (const auto& rb : recipe.blocks()) {
    std::vector<int> merged;
    for (int i : rb) {
      if (i > p.block_count()) continue;
      const auto& src = p.block(i - 1);
      merged.insert(merged.end(), src.begin(), src.end());
    }
    if (!merged.empty()) out.push_back(std::move(merged));
  }
  return Partition::of_blocks(p.ground_size(), std::move(out));
}

Partition permute(const Partition& p, std::span<const int> sigma) {
  const int n = p.ground_size();
  if (static_cast<int>(sigma.size()) != n + 1)
    throw std::domain_error("permute: sigma size mismatch");
  std::vector<int> inv(n + 1, 0);
  for (int x = 1; x <= n; ++x) {
    int y = sigma[x];
    if (y < 1 || y > n || inv[y] != 0) throw std::domain_error("permute: not a permutation");
    inv[y] = x;
  }
  std::vector<std::vector<int>> blocks;
  blocks.reserve(p.block_count());
  for (const auto& b : p.blocks()) {
    std::vector<int> nb;
    nb.reserve(b.size());
    for (int e : b) nb.push_back(inv[e]);
    blocks.push_back(std::move(nb));
  }
  return Partition::of_blocks(n, std::move(blocks));
}

bool is_nested(const Partition& species, const Partition& genes) {
  if (species.ground_size() != genes.ground_size()) return false;
  for (const auto& gb : genes.blocks()) {
    int s = species.block_index_of(gb.front());
    for (int x : gb)
      if (species.block_index_of(x) != s) return false;
  }
  return true;
}

NestedPartition::NestedPartition(Partition species, Partition genes)
    : species_(std::move(species)), genes_(std::move(genes)) {
  if (species_.ground_size() != genes_.ground_size())
    throw std::invalid_argument("nested partition: ground sets differ");
  if (!is_nested(species_, genes_))
    throw std::invalid_argument("nested partition: gene partition not finer than species");
}

NestedPartition NestedPartition::zero_nested(int n) {
  return NestedPartition(Partition::singletons(n), Partition::singletons(n));
}

NestedPartition NestedPartition::of_gene_counts(std::span<const int> g) {
  if (g.empty()) throw std::invalid_argument("of_gene_counts: empty configuration");
  std::vector<std::vector<int>> species;
  int next = 1;
  for (int gi : g) {
    if (gi < 1) throw std::invalid_argument("of_gene_counts: gene counts must be positive");
    std::vector<int> blk(gi);
    std::iota(blk.begin(), blk.end(), next);
    next += gi;
    species.push_back(std::move(blk));
  }
  int n = next - 1;
  return NestedPartition(Partition::of_blocks(n, std::move(species)), Partition::singletons(n));
}

NestedPartition NestedPartition::restrict_to(int m) const {
  return NestedPartition(species_.restrict_to(m), genes_.restrict_to(m));
}

std::vector<std::vector<int>> NestedPartition::genes_by_species() const {
  std::vector<std::vector<int>> groups(species_.block_count());
  for (int gi = 0; gi < genes_.block_count(); ++gi) {
    int si = species_.block_index_of(genes_.block(gi).front());
    groups[si].push_back(gi);
  }
  return groups;  // gene blocks are canonically ordered, so each group is too
}

std::vector<int> NestedPartition::gene_counts() const {
  std::vector<int> g(species_.block_count(), 0);
  for (int gi = 0; gi < genes_.block_count(); ++gi)
    ++g[species_.block_index_of(genes_.block(gi).front())];
  return g;
}

Partition link_partition(const NestedPartition& p) {
  const int m = p.genes().block_count();
  std::vector<std::vector<int>> by_species(p.species().block_count());
  for (int gi = 0; gi < m; ++gi) {
    int si = p.species().block_index_of(p.genes().block(gi).front());
    by_species[si].push_back(gi + 1);
  }
  return Partition::of_blocks(m, std::move(by_species));
}

RecipePair::RecipePair(Partition species_recipe, Partition gene_recipe)
    : species(std::move(species_recipe)), genes(std::move(gene_recipe)) {
  if (!species.is_simple() || !genes.is_simple())
    throw std::invalid_argument("recipe pair: components must be simple");
}

std::pair<Partition, Partition> coag2(const NestedPartition& p, const RecipePair& r) {
  return {coag(p.species(), r.species), coag(p.genes(), r.genes)};
}

bool is_valid_recipe(const NestedPartition& p, const RecipePair& r) {
  auto [s, g] = coag2(p, r);
  return is_nested(s, g);
}

std::size_t MarkArray::total_gene_marks() const {
  std::size_t t = 0;
  for (const auto& row : genes)
    for (auto y : row) t += y;
  return t;
}

std::size_t MarkArray::total_species_marks() const {
  std::size_t t = 0;
  for (auto x : species) t += x;
  return t;
}

namespace {

void check_marks(const NestedPartition& p, const MarkArray& z,
                 const std::vector<std::vector<int>>& groups) {
  const auto b = static_cast<std::size_t>(p.species().block_count());
  if (z.species.size() != b || z.genes.size() != b)
    throw std::domain_error("marks: species dimension mismatch");
  for (std::size_t i = 0; i < b; ++i) {
    if (z.genes[i].size() != groups[i].size())
      throw std::domain_error("marks: gene dimension mismatch");
    if (!z.species[i])
      for (auto y : z.genes[i])
        if (y) throw std::domain_error("marks: gene marked in unmarked species");
  }
}

}  // namespace

NestedPartition apply_marks(const NestedPartition& p, const MarkArray& z) {
  auto groups = p.genes_by_species();
  check_marks(p, z, groups);

  std::vector<int> marked_species;
  std::vector<int> marked_genes;
  for (std::size_t i = 0; i < z.species.size(); ++i) {
    if (z.species[i]) marked_species.push_back(static_cast<int>(i));
    for (std::size_t j = 0; j < z.genes[i].size(); ++j)
      if (z.genes[i][j]) marked_genes.push_back(groups[i][j]);
  }

  auto merge = [](const Partition& part, const std::vector<int>& idx) {
    std::vector<std::vector<int>> blocks;
    std::vector<int> merged;
    std::vector<char> is_marked(part.block_count(), 0);
    for (int i : idx) is_marked[i] = 1;
    for (int i = 0; i < part.block_count(); ++i) {
      if (is_marked[i])
        merged.insert(merged.end(), part.block(i).begin(), part.block(i).end());
      else
        blocks.push_back(part.block(i));
    }
    blocks.push_back(std::move(merged));
    return Partition::of_blocks(part.ground_size(), std::move(blocks));
  };

  Partition species =
      marked_species.size() >= 2 ? merge(p.species(), marked_species) : p.species();
  Partition genes = marked_genes.size() >= 2 ? merge(p.genes(), marked_genes) : p.genes();
  return NestedPartition(std::move(species), std::move(genes));
}

int EventDescriptor::k() const {
  int t = 0;
  for (auto x : s) t += x;
  return t;
}

int EventDescriptor::gene_mark_total() const {
  int t = 0;
  for (const auto& row : c)
    for (auto y : row) t += y;
  return t;
}

int EventDescriptor::l(int i) const {
  int t = 0;
  for (auto y : c[i]) t += y;
  return t;
}

int EventDescriptor::single_marked_species() const {
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i]) return static_cast<int>(i);
  throw std::domain_error("event: no marked species");
}

std::string EventDescriptor::to_string() const {
  std::ostringstream os;
  os << "s=[";
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << int(s[i]);
  os << "] c=[";
  for (std::size_t i = 0; i < c.size(); ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < c[i].size(); ++j) os << (j ? "," : "") << int(c[i][j]);
    os << "]";
  }
  os << "]";
  return os.str();
}

bool operator<(const EventDescriptor& a, const EventDescriptor& b) {
  if (a.g != b.g) return a.g < b.g;
  if (a.s != b.s) return a.s < b.s;
  return a.c < b.c;
}

bool is_valid_event(const EventDescriptor& e) {
  const auto b = e.g.size();
  if (e.s.size() != b || e.c.size() != b) return false;
  for (std::size_t i = 0; i < b; ++i) {
    if (e.g[i] < 1) return false;
    if (e.c[i].size() != static_cast<std::size_t>(e.g[i])) return false;
    if (!e.s[i])
      for (auto y : e.c[i])
        if (y) return false;  // (H1)
  }
  const int marks = e.gene_mark_total();
  if (marks == 1) return false;                     // (H3)
  if (marks < 2 && e.k() < 2) return false;         // (H2)
  return true;
}

std::optional<EventDescriptor> descriptor_of(const NestedPartition& p, const MarkArray& z) {
  auto groups = p.genes_by_species();
  check_marks(p, z, groups);

  const auto k = z.total_species_marks();
  const auto marks = z.total_gene_marks();
  if (k == 0) return std::nullopt;
  if (k == 1 && marks <= 1) return std::nullopt;

  EventDescriptor e;
  e.g = p.gene_counts();
  e.s = z.species;
  if (marks == 1) {
    e.c.resize(z.genes.size());
    for (std::size_t i = 0; i < z.genes.size(); ++i)
      e.c[i].assign(z.genes[i].size(), 0);
  } else {
    e.c = z.genes;
  }
  return e;
}

MarkArray marks_from_descriptor(const EventDescriptor& e) {
  return MarkArray{e.s, e.c};
}

std::string to_text(const Partition& p) {
  std::ostringstream os;
  for (const auto& b : p.blocks()) {
    os << '{';
    for (std::size_t i = 0; i < b.size(); ++i) os << (i ? "," : "") << b[i];
    os << '}';
  }
  return os.str();
}

std::string to_text(const NestedPartition& p) {
  return to_text(p.species()) + " / " + to_text(p.genes());
}

namespace {

std::vector<std::vector<int>> parse_blocks(const std::string& side) {
  std::vector<std::vector<int>> blocks;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < side.size() && std::isspace(static_cast<unsigned char>(side[i]))) ++i;
  };
  skip_ws();
  while (i < side.size()) {
    if (side[i] != '{') throw std::invalid_argument("partition text: expected '{'");
    ++i;
    std::vector<int> blk;
    while (true) {
      skip_ws();
      std::size_t start = i;
      while (i < side.size() && std::isdigit(static_cast<unsigned char>(side[i]))) ++i;
      if (start == i) throw std::invalid_argument("partition text: expected integer");
      blk.push_back(std::stoi(side.substr(start, i - start)));
      skip_ws();
      if (i < side.size() && side[i] == ',') {
        ++i;
        continue;
      }
      if (i < side.size() && side[i] == '}') {
        ++i;
        break;
      }
      throw std::invalid_argument("partition text: expected ',' or '}'");
    }
    blocks.push_back(std::move(blk));
    skip_ws();
  }
  if (blocks.empty()) throw std::invalid_argument("partition text: no blocks");
  return blocks;
}

}  // namespace

NestedPartition nested_from_text(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos)
    throw std::invalid_argument("nested partition text: missing '/'");
  auto species_blocks = parse_blocks(text.substr(0, slash));
  auto gene_blocks = parse_blocks(text.substr(slash + 1));
  int n = 0;
  for (const auto& b : species_blocks)
    for (int x : b) n = std::max(n, x);
  return NestedPartition(Partition::of_blocks(n, std::move(species_blocks)),
                         Partition::of_blocks(n, std::move(gene_blocks)));
}

namespace {

// Restricted-growth-string enumeration of set partitions of `elements`.
void partitions_of(const std::vector<int>& elements, std::size_t pos,
                   std::vector<std::vector<int>>& current,
                   std::vector<std::vector<std::vector<int>>>& out) {
  if (pos == elements.size()) {
    out.push_back(current);
    return;
  }
  for (auto& blk : current) {
    blk.push_back(elements[pos]);
    partitions_of(elements, pos + 1, current, out);
    blk.pop_back();
  }
  current.push_back({elements[pos]});
  partitions_of(elements, pos + 1, current, out);
  current.pop_back();
}

std::vector<std::vector<std::vector<int>>> set_partitions(const std::vector<int>& elements) {
  std::vector<std::vector<std::vector<int>>> out;
  std::vector<std::vector<int>> current;
  partitions_of(elements, 0, current, out);
  return out;
}

}  // namespace

std::vector<Partition> all_partitions(int n) {
  std::vector<int> elements(n);
  std::iota(elements.begin(), elements.end(), 1);
  std::vector<Partition> out;
  for (auto& blocks : set_partitions(elements)) out.push_back(Partition::of_blocks(n, blocks));
  return out;
}

std::vector<Partition> all_simple_partitions(int n) {
  std::vector<Partition> out;
  out.push_back(Partition::singletons(n));
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) < 2) continue;
    std::vector<std::vector<int>> blocks;
    std::vector<int> big;
    for (int x = 1; x <= n; ++x) {
      if (mask & (1u << (x - 1)))
        big.push_back(x);
      else
        blocks.push_back({x});
    }
    blocks.push_back(std::move(big));
    out.push_back(Partition::of_blocks(n, std::move(blocks)));
  }
  return out;
}

std::vector<NestedPartition> all_nested_partitions(int n) {
  std::vector<NestedPartition> out;
  for (const auto& species : all_partitions(n)) {
    // Gene partitions refining `species` are products of per-block partitions.
    std::vector<std::vector<std::vector<std::vector<int>>>> per_block;
    for (const auto& blk : species.blocks()) per_block.push_back(set_partitions(blk));
    std::vector<std::size_t> idx(per_block.size(), 0);
    while (true) {
      std::vector<std::vector<int>> gene_blocks;
      for (std::size_t i = 0; i < per_block.size(); ++i)
        for (const auto& blk : per_block[i][idx[i]]) gene_blocks.push_back(blk);
      out.emplace_back(species, Partition::of_blocks(n, std::move(gene_blocks)));
      std::size_t i = 0;
      while (i < idx.size() && ++idx[i] == per_block[i].size()) idx[i++] = 0;
      if (i == idx.size()) break;
    }
  }
  return out;
}

}  // namespace snec
