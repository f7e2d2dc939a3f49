// Jordan-block data for order-p unipotent elements on the minimal and adjoint
// modules in the narrow characteristics where those actions differ from the
// stable large-p pattern, together with feasibility predicates (block-parity
// constraints per embedding type) and a small library of machine-checkable
// module-structure bounds.
//
// Only explicitly tabulated data is encoded; queries outside it fail loudly
// so that nothing silently relies on rows that were never entered.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "exc/rootdata.hpp"
#include "exc/sl2rep.hpp"

namespace exc {

// Multiset of Jordan block sizes, kept in descending order.
struct JordanPartition {
  std::vector<int> blocks;

  JordanPartition() = default;
  explicit JordanPartition(std::vector<int> blocks_);

  int64_t total() const;
  int count_of(int size) const;

  // "9,6^2,3,1" style: sizes descending, "^mult" only when mult > 1.
  std::string to_string() const;
  static JordanPartition parse(const std::string& s);

  bool operator==(const JordanPartition&) const = default;
  auto operator<=>(const JordanPartition&) const = default;
};

// Which embedding flavour a tabulated row was derived for.  Rows marked Any
// are class data valid regardless of how an SL2 sits over the centre; PSL/SL
// rows come from lists that were pre-filtered for that flavour.
enum class RowEmbedding { Any, PSL, SL };

struct ActionRow {
  GroupType group = GroupType::F4;
  int p = 0;
  // Module axis: "vmin", "adjoint", or a named characteristic-specific
  // module ("25", "25/1", "1/25/1" for F4 at p=3; "77", "78" for the E6
  // adjoint family at p=3).
  std::string module_name;
  std::string class_name;
  JordanPartition partition;
  bool generic = false;
  RowEmbedding embedding = RowEmbedding::Any;
};

// The module-name key used by ModuleId-typed queries: "25" for (F4, p=3,
// Vmin), "77" for (E6, p=3, Adjoint), otherwise "vmin"/"adjoint".
std::string action_module_name(GroupType g, int p, ModuleId m);
// Dimension of a module-axis name (for row validation).
int64_t action_module_dim(GroupType g, int p, const std::string& module_name);

class ActionTable {
 public:
  // The compiled-in versioned asset.
  static const ActionTable& builtin();
  // Parse the text form: "# actiontable v1 count=<k> checksum=<hex>" header
  // followed by "group|p|module|class|partition|generic|embedding" lines.
  // Validates the checksum and that every partition sums to its module's
  // dimension.
  static ActionTable parse_text(const std::string& text);
  // Parse a table from a file, e.g. to extend or replace the builtin rows
  // for a query.  Missing file is MissingTableError.
  static ActionTable load_file(const std::string& path);

  const std::vector<ActionRow>& rows() const { return rows_; }

 private:
  std::vector<ActionRow> rows_;
};

// The tabulated rows for one (group, p, module) triple; encoded == false is
// the explicit marker for an uncovered triple.
struct ActionSlice {
  bool encoded = false;
  std::vector<ActionRow> rows;
};

ActionSlice allowed_actions(GroupType g, int p, const std::string& module_name,
                            const ActionTable& table = ActionTable::builtin());
ActionSlice allowed_actions(GroupType g, int p, ModuleId m,
                            const ActionTable& table = ActionTable::builtin());

// Jordan type of an order-p element on a direct sum: the multiset union of
// the summands' block multisets.
JordanPartition partition_of(const std::vector<IndecomposableSL2p>& modules);

// Name of the violated block-parity rule, or nullopt when none applies or
// none is violated.  For embedding SLWithCenter the stricter faithful-module
// rules are used exactly when the centre acts as -1 on the module (E7 Vmin);
// the self-dual refinements at p = 1 mod 4 are skipped for the one
// non-self-dual module here (E6 Vmin).
std::optional<std::string> parity_violation(const JordanPartition& partition,
                                            GroupType group, int p,
                                            ModuleId module_id,
                                            EmbeddingType embedding);

// Feasibility of a Jordan type for the given embedding flavour.  The encoded
// tables are excerpts (classes whose action at this p differs from the
// stable pattern, plus a few explicitly quoted rows), so Impossible means
// "violates a parity rule or matches no tabulated action", and GenericOnly
// means every matching row is flagged generic.
struct FeasibilityVerdict {
  enum class Kind { GenericOnly, ListedNonGeneric, Impossible };
  Kind kind = Kind::Impossible;
  std::vector<ActionRow> rows;  // matching rows for the two possible kinds
  std::string reason;           // for Impossible: the violated rule or "no encoded action"
};

FeasibilityVerdict feasible(const JordanPartition& partition, GroupType group,
                            int p, ModuleId module_id, EmbeddingType embedding,
                            const ActionTable& table = ActionTable::builtin());

// A machine-checkable structure bound with its provenance note.  evaluate
// applies the bound to a composition-factor multiset plus the Jordan type of
// an order-p element on the same module; `consistent == false` means the
// input cannot satisfy the fact's conclusion (e.g. a trivial submodule or
// quotient is forced).
struct StructureFactEvaluation {
  bool applicable = false;  // the fact's hypotheses hold for this input
  bool consistent = true;   // meaningful only when applicable
  int64_t bound = 0;        // the computed rule-specific bound
  std::string detail;
};

struct StructureFact {
  std::string id;
  int p = 0;
  int a = 0;
  std::string statement;
  std::string citation;
  std::function<StructureFactEvaluation(const FactorMultiset&, const JordanPartition&)>
      evaluate;
};

// Known ids: largest1and2, char2pressure1, char2pressuregeneral, no414,
// sl2832sfor2trivials, largest2and4, largestsubmodofP4.  Unknown ids are a
// plain error; a known id outside its tabulated (p, a) range is
// NotTabulated.
StructureFact structure_fact(int p, int a, const std::string& fact_id);
std::vector<std::string> structure_fact_ids();

}  // namespace exc
