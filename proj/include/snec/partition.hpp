#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace snec {

/// Partition of {1,...,n} into disjoint nonempty blocks, kept in canonical
/// form: elements sorted within each block, blocks ordered by least element.
/// Values are immutable after construction and cheap to copy/share.
class Partition {
public:
  static Partition singletons(int n);
  static Partition one_block(int n);
  /// Builds from an arbitrary block list; canonicalizes and validates that
  /// the blocks are disjoint and cover {1,...,n}.
  static Partition of_blocks(int n, std::vector<std::vector<int>> blocks);

  int ground_size() const { return n_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  const std::vector<int>& block(int i) const { return blocks_[i]; }

  /// 0-based index of the block containing element x (1-based).
  int block_index_of(int x) const;
  bool same_block(int x, int y) const { return block_index_of(x) == block_index_of(y); }

  /// At most one block has more than one element.
  bool is_simple() const;

  /// Restriction to {1,...,m}; empty blocks are dropped.
  Partition restrict_to(int m) const;

  bool operator==(const Partition&) const = default;

private:
  Partition() = default;
  int n_ = 0;
  std::vector<std::vector<int>> blocks_;
  std::vector<int> block_of_;  // block_of_[x] = block index of element x
};

/// Coagulation: block j of the result is the union of p's blocks listed in
/// block j of the recipe (indices past p's block count are ignored).
/// Requires recipe.ground_size() >= p.block_count().
Partition coag(const Partition& p, const Partition& recipe);

/// x ~ result ~ y  iff  sigma(x) ~ p ~ sigma(y).  sigma is 1-based
/// (sigma[0] unused) and must be a permutation of {1,...,n}.
Partition permute(const Partition& p, std::span<const int> sigma);

bool is_nested(const Partition& species, const Partition& genes);

/// A species/gene pair with the gene partition finer than the species one.
class NestedPartition {
public:
  NestedPartition(Partition species, Partition genes);

  /// All singletons in both components.
  static NestedPartition zero_nested(int n);
  /// Species blocks of consecutive integers sized g[0], g[1], ...; genes are
  /// singletons.  The standard starting configuration for rate studies.
  static NestedPartition of_gene_counts(std::span<const int> g);

  const Partition& species() const { return species_; }
  const Partition& genes() const { return genes_; }
  int ground_size() const { return species_.ground_size(); }

  NestedPartition restrict_to(int m) const;

  /// Global gene-block indices grouped per species block, each group ordered
  /// by least element.
  std::vector<std::vector<int>> genes_by_species() const;
  /// Number of gene blocks inside each species block.
  std::vector<int> gene_counts() const;

  bool operator==(const NestedPartition&) const = default;

private:
  Partition species_;
  Partition genes_;
};

/// The unique partition r of the gene-block labels with
/// coag(p.genes(), r) == p.species().
Partition link_partition(const NestedPartition& p);

/// Pair of simple partitions prescribing one species merger and one gene
/// merger.  Construction rejects non-simple components.
struct RecipePair {
  RecipePair(Partition species_recipe, Partition gene_recipe);
  Partition species;
  Partition genes;
};

/// Componentwise coagulation.  The result is not necessarily nested.
std::pair<Partition, Partition> coag2(const NestedPartition& p, const RecipePair& r);

/// True iff coag2(p, r) is nested.
bool is_valid_recipe(const NestedPartition& p, const RecipePair& r);

/// Participation marks: species[i] flags the i-th species block, genes[i][j]
/// the j-th gene block of the i-th species block.  genes[i][j] may be set
/// only when species[i] is.
struct MarkArray {
  std::vector<std::uint8_t> species;
  std::vector<std::vector<std::uint8_t>> genes;

  std::size_t total_gene_marks() const;
  std::size_t total_species_marks() const;
};

/// Merges all marked species blocks into one and all marked gene blocks into
/// one; a single marked gene leaves the gene partition unchanged.
NestedPartition apply_marks(const NestedPartition& p, const MarkArray& z);

/// Coalescence event on a configuration with gene counts g: s flags merging
/// species, c[i][j] flags merging genes, subject to
///   s[i] = 0  =>  c[i][j] = 0 for all j,
///   sum c < 2 =>  sum s >= 2,
///   sum c != 1.
struct EventDescriptor {
  std::vector<int> g;
  std::vector<std::uint8_t> s;
  std::vector<std::vector<std::uint8_t>> c;

  int b() const { return static_cast<int>(g.size()); }
  int k() const;                    // number of merging species
  int gene_mark_total() const;      // sum of c
  int l(int i) const;               // gene marks within species i
  /// Index of the unique marked species; only meaningful when k() == 1.
  int single_marked_species() const;

  bool operator==(const EventDescriptor&) const = default;
  std::string to_string() const;
};

bool operator<(const EventDescriptor& a, const EventDescriptor& b);

/// Shape and hypothesis check for membership in the admissible event set.
bool is_valid_event(const EventDescriptor& e);

/// Translates marks into the event they encode, normalizing a single gene
/// mark to none; nullopt when the marks change nothing (all zero, or one
/// marked species with at most one marked gene).
std::optional<EventDescriptor> descriptor_of(const NestedPartition& p, const MarkArray& z);

MarkArray marks_from_descriptor(const EventDescriptor& e);

/// Text form: `{1,5,7}{2,4,8,10} / {1}{2,4}{5,7}...` -- species blocks, a
/// slash, then gene blocks.
std::string to_text(const NestedPartition& p);
std::string to_text(const Partition& p);
NestedPartition nested_from_text(const std::string& text);

// Exhaustive enumeration, used by oracles and small-n test sweeps.
std::vector<Partition> all_partitions(int n);
std::vector<Partition> all_simple_partitions(int n);
std::vector<NestedPartition> all_nested_partitions(int n);

}  // namespace snec
