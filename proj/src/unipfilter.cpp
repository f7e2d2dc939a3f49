// Tabulated unipotent Jordan-block data, block-parity feasibility rules and
// module-structure bounds.  The table rows are shipped as a versioned text
// asset (same header/checksum style as the class-table cache files) compiled
// into the binary.
#include "exc/unipfilter.hpp"

#include <algorithm>
#include <climits>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "exc/common.hpp"

namespace exc {

namespace {

uint64_t fnv1a(const std::string& data) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char byte : data) {
    h ^= byte;
    h *= 1099511628211ull;
  }
  return h;
}

int parse_positive_int(const std::string& text, const char* what) {
  size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(text, &used);
  } catch (...) {
    fail(std::string("unreadable ") + what + ": \"" + text + "\"");
  }
  if (used != text.size() || value <= 0)
    fail(std::string("unreadable ") + what + ": \"" + text + "\"");
  return value;
}

// Rows grouped by source table: the F4 p=3 table over its three module
// variants, the E6 p=3 adjoint pair, the quoted minimal-module rows for F4
// and E6, the E7 minimal-module lists for the two embedding flavours, and
// two quoted adjoint rows.
constexpr const char kBuiltinActionTable[] =
    R"tbl(# actiontable v1 count=119 checksum=1176c470684e9546
F4|3|25|A1|2^6,1^13|-|any
F4|3|25/1|A1|2^6,1^14|-|any
F4|3|1/25/1|A1|2^6,1^15|-|any
F4|3|25|~A1|3,2^8,1^6|-|any
F4|3|25/1|~A1|3,2^8,1^7|-|any
F4|3|1/25/1|~A1|3,2^8,1^8|-|any
F4|3|25|A1+~A1|3^3,2^6,1^4|-|any
F4|3|25/1|A1+~A1|3^3,2^6,1^5|-|any
F4|3|1/25/1|A1+~A1|3^3,2^6,1^6|-|any
F4|3|25|A2|3^6,1^7|g|any
F4|3|25/1|A2|3^6,1^8|g|any
F4|3|1/25/1|A2|3^6,1^9|g|any
F4|3|25|A2+~A1|3^7,2^2|-|any
F4|3|25/1|A2+~A1|3^7,2^2,1|-|any
F4|3|1/25/1|A2+~A1|3^7,2^2,1^2|-|any
F4|3|25|~A2|3^8,1|-|any
F4|3|25/1|~A2|3^8,2|-|any
F4|3|1/25/1|~A2|3^9|-|any
F4|3|25|~A2+A1|3^8,1|-|any
F4|3|25/1|~A2+A1|3^8,2|-|any
F4|3|1/25/1|~A2+A1|3^9|-|any
F4|3|25|B2|5,4^4,1^4|-|any
F4|3|25/1|B2|5,4^4,1^5|-|any
F4|3|1/25/1|B2|5,4^4,1^6|-|any
F4|3|25|C3(a1)|5^2,4^2,3,2^2|-|any
F4|3|25/1|C3(a1)|5^2,4^2,3,2^2,1|-|any
F4|3|1/25/1|C3(a1)|5^2,4^2,3,2^2,1^2|-|any
F4|3|25|F4(a3)|5^3,3^3,1|-|any
F4|3|25/1|F4(a3)|5^3,3^3,1^2|-|any
F4|3|1/25/1|F4(a3)|5^3,3^3,1^3|-|any
F4|3|25|B3|7^3,1^4|-|any
F4|3|25/1|B3|7^3,1^5|-|any
F4|3|1/25/1|B3|7^3,1^6|-|any
F4|3|25|C3|9,6^2,3,1|-|any
F4|3|25/1|C3|9,6^2,3,2|-|any
F4|3|1/25/1|C3|9,6^2,3^2|-|any
F4|3|25|F4(a2)|9,6^2,3,1|-|any
F4|3|25/1|F4(a2)|9,6^2,3,2|-|any
F4|3|1/25/1|F4(a2)|9,6^2,3^2|-|any
F4|3|25|F4(a1)|9^2,7|-|any
F4|3|25/1|F4(a1)|9^2,7,1|-|any
F4|3|1/25/1|F4(a1)|9^2,7,1^2|-|any
F4|3|25|F4|15,9,1|-|any
F4|3|25/1|F4|15,9,2|-|any
F4|3|1/25/1|F4|15,9,3|-|any
E6|3|77|2A2|3^23,1^8|-|any
E6|3|78|2A2|3^23,2,1^7|-|any
E6|3|77|2A2+A1|3^24,2^2,1|-|any
E6|3|78|2A2+A1|3^24,2^3|-|any
E6|3|77|A5|9^3,8^2,6^4,3^2,1^4|-|any
E6|3|78|A5|9^3,8^2,6^4,3^2,2,1^3|-|any
E6|3|77|E6(a3)|9^4,7,6^4,3^3,1|-|any
E6|3|78|E6(a3)|9^4,7,6^4,3^3,2|-|any
E6|3|77|E6(a1)|9^8,5|-|any
E6|3|78|E6(a1)|9^8,6|-|any
E6|3|77|E6|19,15^2,9^3,1|-|any
E6|3|78|E6|19,15^2,9^3,2|-|any
F4|7|vmin|C3|7^2,6^2|-|any
F4|7|vmin|F4(a2)|7^3,5|-|any
F4|13|vmin|F4|13^2|-|any
E6|5|vmin|A4|5^5,1^2|-|any
E6|5|vmin|A4+A1|5^5,2|-|any
E6|7|vmin|A5|7^2,6^2,1|-|any
E6|7|vmin|D5(a1)|7^3,3,2,1|-|any
E6|7|vmin|E6(a3)|7^3,5,1|-|any
E6|11|vmin|D5|11,9,5,1^2|g|any
E6|11|vmin|E6(a1)|11^2,5|-|any
E6|13|vmin|E6|13^2,1|-|any
E6|17|vmin|E6|17,9,1|g|any
E7|5|vmin|A3+A2|5^6,4^2,3^4,2^2,1^2|-|psl
E7|5|vmin|A4|5^10,1^6|-|psl
E7|5|vmin|A4+A1|5^10,2^2,1^2|-|psl
E7|5|vmin|A4+A2|5^10,3^2|-|psl
E7|7|vmin|(A5)''|7^2,6^7|-|psl
E7|7|vmin|D4+A1|7^6,2^5,1^4|-|psl
E7|7|vmin|D5(a1)|7^6,3^2,2^2,1^4|-|psl
E7|7|vmin|(A5)'|7^4,6^4,1^4|-|psl
E7|7|vmin|A5+A1|7^4,6^3,5^2|-|psl
E7|7|vmin|D5(a1)+A1|7^6,4,2^5|-|psl
E7|7|vmin|D6(a2)|7^6,5^2,4|-|psl
E7|7|vmin|E6(a3)|7^6,5^2,1^4|-|psl
E7|7|vmin|E7(a5)|7^6,6,4^2|-|psl
E7|7|vmin|A6|7^8|-|psl
E7|11|vmin|D6|11^4,10,1^2|-|psl
E7|11|vmin|E6(a1)|11^4,5^2,1^2|-|psl
E7|11|vmin|E7(a3)|11^4,10,2|-|psl
E7|13|vmin|E6|13^4,1^4|-|psl
E7|19|vmin|E7|19^2,18|-|psl
E7|5|vmin|(A3+A1)''|5^2,4^8,2^7|-|sl
E7|5|vmin|D4(a1)+A1|5^6,4,3^4,2^5|-|sl
E7|5|vmin|A3+A2|5^6,4^2,3^4,2^2,1^2|-|sl
E7|5|vmin|A3+A2+A1|5^6,4^4,2^5|-|sl
E7|5|vmin|A4|5^10,1^6|-|sl
E7|5|vmin|A4+A1|5^10,2^2,1^2|-|sl
E7|5|vmin|A4+A2|5^10,3^2|-|sl
E7|7|vmin|(A5)''|7^2,6^7|-|sl
E7|7|vmin|D4+A1|7^6,2^5,1^4|-|sl
E7|7|vmin|D5(a1)|7^6,3^2,2^2,1^4|-|sl
E7|7|vmin|(A5)'|7^4,6^4,1^4|-|sl
E7|7|vmin|A5+A1|7^4,6^3,5^2|-|sl
E7|7|vmin|D5(a1)+A1|7^6,4,2^5|-|sl
E7|7|vmin|D6(a2)|7^6,5^2,4|-|sl
E7|7|vmin|E6(a3)|7^6,5^2,1^4|-|sl
E7|7|vmin|E7(a5)|7^6,6,4^2|-|sl
E7|7|vmin|A6|7^8|-|sl
E7|11|vmin|D6|11^4,10,1^2|-|sl
E7|11|vmin|E6(a1)|11^4,5^2,1^2|-|sl
E7|11|vmin|E7(a3)|11^4,10,2|-|sl
E7|11|vmin|E7(a4)|11^2,10,8,6,4^2,2|-|sl
E7|13|vmin|E6|13^4,1^4|-|sl
E7|13|vmin|E7(a3)|13^2,12,10,6,2|-|sl
E7|13|vmin|E7(a2)|13^4,4|-|sl
E7|17|vmin|E7(a2)|17^2,10,8,4|-|sl
E7|17|vmin|E7(a1)|17^2,16,6|-|sl
E7|19|vmin|E7(a1)|19^2,12,6|-|sl
E7|19|vmin|E7|19^2,18|-|sl
E7|23|vmin|E7|23^2,10|-|sl
E7|7|adjoint|E7(a5)|7^17,5,3^3|-|any
E7|13|adjoint|E7(a2)|13^10,3|-|any
)tbl";

}  // namespace

JordanPartition::JordanPartition(std::vector<int> blocks_) : blocks(std::move(blocks_)) {
  for (int b : blocks)
    if (b <= 0) fail("JordanPartition: block sizes must be positive");
  std::sort(blocks.begin(), blocks.end(), std::greater<int>());
}

int64_t JordanPartition::total() const {
  return std::accumulate(blocks.begin(), blocks.end(), int64_t{0});
}

int JordanPartition::count_of(int size) const {
  return static_cast<int>(std::count(blocks.begin(), blocks.end(), size));
}

std::string JordanPartition::to_string() const {
  std::string out;
  for (size_t i = 0; i < blocks.size();) {
    size_t j = i;
    while (j < blocks.size() && blocks[j] == blocks[i]) ++j;
    if (!out.empty()) out += ',';
    out += std::to_string(blocks[i]);
    if (j - i > 1) {
      out += '^';
      out += std::to_string(j - i);
    }
    i = j;
  }
  return out;
}

JordanPartition JordanPartition::parse(const std::string& s) {
  if (s.empty()) fail("JordanPartition::parse: empty text");
  std::vector<int> blocks;
  std::stringstream stream(s);
  std::string token;
  while (std::getline(stream, token, ',')) {
    const size_t caret = token.find('^');
    const int size = parse_positive_int(token.substr(0, caret), "block size");
    int mult = 1;
    if (caret != std::string::npos)
      mult = parse_positive_int(token.substr(caret + 1), "block multiplicity");
    blocks.insert(blocks.end(), mult, size);
  }
  return JordanPartition(std::move(blocks));
}

std::string action_module_name(GroupType g, int p, ModuleId m) {
  if (g == GroupType::F4 && p == 3 && m == ModuleId::Vmin) return "25";
  if (g == GroupType::E6 && p == 3 && m == ModuleId::Adjoint) return "77";
  return module_name(m);
}

int64_t action_module_dim(GroupType g, int p, const std::string& name) {
  if (!is_prime(p)) fail("action_module_dim: p = " + std::to_string(p) + " is not prime");
  if (name == "25" || name == "25/1" || name == "1/25/1") {
    if (g != GroupType::F4 || p != 3)
      fail("action_module_dim: module \"" + name + "\" is specific to F4 at p = 3");
    return name == "25" ? 25 : name == "25/1" ? 26 : 27;
  }
  if (name == "77" || name == "78") {
    if (g != GroupType::E6 || p != 3)
      fail("action_module_dim: module \"" + name + "\" is specific to E6 at p = 3");
    return name == "77" ? 77 : 78;
  }
  if (name == "vmin") {
    if (g == GroupType::F4) {
      if (p == 3)
        fail("action_module_dim: the F4 minimal module at p = 3 is recorded as "
             "\"25\", \"25/1\" or \"1/25/1\"");
      return 26;
    }
    return g == GroupType::E6 ? 27 : 56;
  }
  if (name == "adjoint") {
    if (g == GroupType::F4) return 52;
    if (g == GroupType::E6) {
      if (p == 3)
        fail("action_module_dim: the E6 adjoint at p = 3 is recorded as \"77\" or \"78\"");
      return 78;
    }
    return p == 2 ? 132 : 133;
  }
  fail("action_module_dim: unknown module name \"" + name + "\"");
}

ActionTable ActionTable::parse_text(const std::string& text) {
  const size_t eol = text.find('\n');
  if (eol == std::string::npos) fail("action table: missing header line");
  const std::string header = text.substr(0, eol);
  unsigned long long count = 0;
  char ck[32] = {0};
  if (std::sscanf(header.c_str(), "# actiontable v1 count=%llu checksum=%31s", &count, ck) != 2)
    fail("action table: unrecognized header/version: " + header);
  const std::string body = text.substr(eol + 1);
  char expect[17];
  std::snprintf(expect, sizeof expect, "%016llx",
                static_cast<unsigned long long>(fnv1a(body)));
  if (std::string(expect) != ck)
    fail("action table: checksum mismatch (data edited or truncated)");

  ActionTable table;
  size_t pos = 0;
  while (pos < body.size()) {
    size_t end = body.find('\n', pos);
    if (end == std::string::npos) end = body.size();
    const std::string line = body.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;

    std::vector<std::string> fields;
    size_t p0 = 0;
    while (p0 <= line.size()) {
      const size_t bar = line.find('|', p0);
      fields.push_back(line.substr(p0, bar == std::string::npos ? std::string::npos : bar - p0));
      if (bar == std::string::npos) break;
      p0 = bar + 1;
    }
    if (fields.size() != 7) fail("action table: malformed row: " + line);

    ActionRow row;
    row.group = parse_group(fields[0]);
    row.p = parse_positive_int(fields[1], "characteristic");
    if (!is_prime(row.p)) fail("action table: p = " + fields[1] + " is not prime");
    row.module_name = fields[2];
    row.class_name = fields[3];
    if (row.class_name.empty()) fail("action table: empty class name: " + line);
    row.partition = JordanPartition::parse(fields[4]);
    if (fields[5] == "g")
      row.generic = true;
    else if (fields[5] != "-")
      fail("action table: unreadable generic flag \"" + fields[5] + "\"");
    if (fields[6] == "any")
      row.embedding = RowEmbedding::Any;
    else if (fields[6] == "psl")
      row.embedding = RowEmbedding::PSL;
    else if (fields[6] == "sl")
      row.embedding = RowEmbedding::SL;
    else
      fail("action table: unreadable embedding tag \"" + fields[6] + "\"");

    const int64_t want = action_module_dim(row.group, row.p, row.module_name);
    if (row.partition.total() != want)
      fail("action table: row \"" + line + "\" sums to " +
           std::to_string(row.partition.total()) + ", expected " + std::to_string(want));
    table.rows_.push_back(std::move(row));
  }
  if (table.rows_.size() != count)
    fail("action table: header count " + std::to_string(count) + " != " +
         std::to_string(table.rows_.size()) + " rows");
  return table;
}

const ActionTable& ActionTable::builtin() {
  static const ActionTable table = parse_text(kBuiltinActionTable);
  return table;
}

ActionTable ActionTable::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingTableError("action table: cannot open \"" + path + "\"");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_text(text);
}

ActionSlice allowed_actions(GroupType g, int p, const std::string& module_name,
                            const ActionTable& table) {
  ActionSlice slice;
  for (const auto& row : table.rows()) {
    if (row.group != g || row.p != p || row.module_name != module_name) continue;
    slice.encoded = true;
    slice.rows.push_back(row);
  }
  return slice;
}

ActionSlice allowed_actions(GroupType g, int p, ModuleId m, const ActionTable& table) {
  return allowed_actions(g, p, action_module_name(g, p, m), table);
}

JordanPartition partition_of(const std::vector<IndecomposableSL2p>& modules) {
  std::vector<int> blocks;
  for (const auto& m : modules) {
    const std::vector<int> part = jordan_blocks(m);
    blocks.insert(blocks.end(), part.begin(), part.end());
  }
  return JordanPartition(std::move(blocks));
}

namespace {

// How the central involution of the rank-1 subgroup acts on the module:
// trivially (the block-count rules for the plain group apply), as -1 (the
// faithful-module rules apply), or with mixed signs (no rule known).
enum class CenterAction { Trivial, MinusOne, Mixed };

CenterAction center_action(GroupType group, ModuleId module_id, EmbeddingType embedding) {
  if (embedding == EmbeddingType::PSL) return CenterAction::Trivial;
  if (group == GroupType::E7)
    return module_id == ModuleId::Vmin ? CenterAction::MinusOne : CenterAction::Trivial;
  // F4 and E6 have no central involution, so a surviving SL2 centre is a
  // non-central involution of the ambient group and acts with both signs.
  return CenterAction::Mixed;
}

}  // namespace

std::optional<std::string> parity_violation(const JordanPartition& partition, GroupType group,
                                            int p, ModuleId module_id,
                                            EmbeddingType embedding) {
  if (!is_prime(p)) fail("parity_violation: p = " + std::to_string(p) + " is not prime");
  if (p == 2) return std::nullopt;
  for (int b : partition.blocks)
    if (b > p)
      fail("parity_violation: block of size " + std::to_string(b) +
           " exceeds the element order " + std::to_string(p));

  const bool self_dual = !(group == GroupType::E6 && module_id == ModuleId::Vmin);
  const CenterAction z = center_action(group, module_id, embedding);
  if (z == CenterAction::Mixed) return std::nullopt;

  const auto sum_counts = [&](int first, int last) {
    int64_t s = 0;
    for (int i = first; i <= last; i += 2) s += partition.count_of(i);
    return s;
  };
  const int64_t np = partition.count_of(p);

  if (z == CenterAction::Trivial) {
    if (np < sum_counts(2, p - 3)) return "pblockseven";
    if (p % 4 == 1 && self_dual) {
      for (int i = 2; i < p; i += 2)
        if (partition.count_of(i) % 2 != 0) return "blocks1mod4";
      if (np < sum_counts(2, p - 3)) return "blocks1mod4";
    }
  } else {
    if (np < sum_counts(1, p - 4)) return "faithfulpblockseven";
    if (p % 4 == 1 && self_dual) {
      for (int i = 1; i <= p; i += 2)
        if (partition.count_of(i) % 2 != 0) return "faithfulblocks1mod4";
      if (np < sum_counts(1, p - 2)) return "faithfulblocks1mod4";
    }
  }
  return std::nullopt;
}

FeasibilityVerdict feasible(const JordanPartition& partition, GroupType group, int p,
                            ModuleId module_id, EmbeddingType embedding,
                            const ActionTable& table) {
  const std::string name = action_module_name(group, p, module_id);
  const ActionSlice slice = allowed_actions(group, p, name, table);
  if (!slice.encoded)
    throw NotEncodedError("feasible: no encoded unipotent actions for " + group_name(group) +
                          " p=" + std::to_string(p) + " module=" + name);
  const int64_t dim = action_module_dim(group, p, name);
  if (partition.total() != dim)
    fail("feasible: partition sums to " + std::to_string(partition.total()) + ", module " +
         name + " has dimension " + std::to_string(dim));

  FeasibilityVerdict verdict;
  if (const auto rule = parity_violation(partition, group, p, module_id, embedding)) {
    verdict.kind = FeasibilityVerdict::Kind::Impossible;
    verdict.reason = *rule;
    return verdict;
  }
  for (const auto& row : slice.rows) {
    const bool compatible =
        row.embedding == RowEmbedding::Any ||
        (embedding == EmbeddingType::PSL ? row.embedding == RowEmbedding::PSL
                                         : row.embedding == RowEmbedding::SL);
    if (compatible && row.partition == partition) verdict.rows.push_back(row);
  }
  if (verdict.rows.empty()) {
    verdict.kind = FeasibilityVerdict::Kind::Impossible;
    verdict.reason = "matches no encoded action";
    return verdict;
  }
  const bool all_generic = std::all_of(verdict.rows.begin(), verdict.rows.end(),
                                       [](const ActionRow& r) { return r.generic; });
  verdict.kind = all_generic ? FeasibilityVerdict::Kind::GenericOnly
                             : FeasibilityVerdict::Kind::ListedNonGeneric;
  return verdict;
}

namespace {

int64_t count_dim(const FactorMultiset& v, int64_t d) {
  int64_t c = 0;
  for (const auto& [label, mult] : v.entries)
    if (label.dim() == d) c += mult;
  return c;
}

void check_fact_input(const StructureFact& f, const FactorMultiset& v) {
  if (v.p != f.p || v.a != f.a)
    fail("structure_fact \"" + f.id + "\": factors are for SL2(" + std::to_string(v.p) + "^" +
         std::to_string(v.a) + "), fact is for SL2(" + std::to_string(f.p) + "^" +
         std::to_string(f.a) + ")");
}

void check_involution_partition(const StructureFact& f, const FactorMultiset& v,
                                const JordanPartition& jp) {
  if (jp.total() != v.dimension())
    fail("structure_fact \"" + f.id + "\": partition sums to " + std::to_string(jp.total()) +
         ", factors sum to " + std::to_string(v.dimension()));
  for (int b : jp.blocks)
    if (b > 2)
      fail("structure_fact \"" + f.id + "\": block of size " + std::to_string(b) +
           " is impossible for an involution");
}

}  // namespace

std::vector<std::string> structure_fact_ids() {
  return {"char2pressure1",  "char2pressuregeneral", "sl2832sfor2trivials", "largest1and2",
          "largest2and4",    "largestsubmodofP4",    "no414"};
}

StructureFact structure_fact(int p, int a, const std::string& fact_id) {
  if (!is_prime(p)) fail("structure_fact: p = " + std::to_string(p) + " is not prime");
  if (a < 1) fail("structure_fact: a = " + std::to_string(a) + " must be positive");

  StructureFact f;
  f.id = fact_id;
  f.p = p;
  f.a = a;

  const auto require_range = [&](int want_p, int lo_a, int hi_a) {
    if (p != want_p || a < lo_a || a > hi_a) {
      std::string range = hi_a == INT_MAX ? std::to_string(lo_a) + " <= a"
                                          : std::to_string(lo_a) + " <= a <= " +
                                                std::to_string(hi_a);
      throw NotTabulatedError("structure_fact: \"" + fact_id + "\" is tabulated for p = " +
                              std::to_string(want_p) + ", " + range + "; requested p = " +
                              std::to_string(p) + ", a = " + std::to_string(a));
    }
  };

  if (fact_id == "char2pressure1") {
    require_range(2, 1, INT_MAX);
    f.statement =
        "A module with at least one trivial composition factor, no trivial submodule or "
        "quotient, and pressure 1 restricts to each order-2 subgroup freely when its "
        "dimension is even, and with exactly one size-1 block when odd.";
    f.citation = "pressure bound for involution actions, pressure-1 case";
    f.evaluate = [f](const FactorMultiset& v, const JordanPartition& jp) {
      check_fact_input(f, v);
      StructureFactEvaluation ev;
      if (count_dim(v, 1) < 1 || pressure(v) != 1) return ev;
      check_involution_partition(f, v, jp);
      ev.applicable = true;
      ev.bound = v.dimension() % 2;
      const int64_t ones = jp.count_of(1);
      ev.consistent = ones == ev.bound;
      ev.detail = "involution must act with exactly " + std::to_string(ev.bound) +
                  " size-1 blocks; partition has " + std::to_string(ones);
      return ev;
    };
    return f;
  }

  if (fact_id == "char2pressuregeneral") {
    require_range(2, 1, INT_MAX);
    f.statement =
        "A module with at least one trivial composition factor and no trivial submodule or "
        "quotient admits at most pressure-many size-1 blocks for any involution.";
    f.citation = "pressure bound for involution actions, general case";
    f.evaluate = [f](const FactorMultiset& v, const JordanPartition& jp) {
      check_fact_input(f, v);
      StructureFactEvaluation ev;
      if (count_dim(v, 1) < 1) return ev;
      check_involution_partition(f, v, jp);
      ev.applicable = true;
      ev.bound = pressure(v);
      const int64_t ones = jp.count_of(1);
      ev.consistent = ones <= ev.bound;
      ev.detail = "involution admits at most " + std::to_string(ev.bound) +
                  " size-1 blocks; partition has " + std::to_string(ones);
      return ev;
    };
    return f;
  }

  if (fact_id == "sl2832sfor2trivials") {
    require_range(2, 3, 3);
    f.statement =
        "An even-dimensional module with 2n > 0 trivial composition factors and no trivial "
        "submodule or quotient has at least 3n composition factors of dimension 2.  The "
        "relevant projective cover is P(2_1) = "
        "2_1/1,4_{1,3}/2_1,2_2,2_3/1,1,4_{2,3}/2_1,2_2,2_3/1,4_{1,3}/2_1.";
    f.citation = "socle-layer count in the projective cover of the first 2-dimensional simple";
    f.evaluate = [f](const FactorMultiset& v, const JordanPartition&) {
      check_fact_input(f, v);
      StructureFactEvaluation ev;
      const int64_t trivials = count_dim(v, 1);
      if (v.dimension() % 2 != 0 || trivials < 1 || trivials % 2 != 0) return ev;
      ev.applicable = true;
      const int64_t n = trivials / 2;
      ev.bound = 3 * n;
      const int64_t twos = count_dim(v, 2);
      ev.consistent = twos >= ev.bound;
      ev.detail = "needs at least " + std::to_string(ev.bound) +
                  " dimension-2 factors; multiset has " + std::to_string(twos);
      return ev;
    };
    return f;
  }

  if (fact_id == "largest1and2") {
    require_range(2, 3, 10);
    f.statement =
        "If a module has c > 0 trivial composition factors, no trivial submodule or "
        "quotient, and an involution acts with b size-1 blocks, then it has at least "
        "2b + 3(c-b)/2 composition factors of dimension 2.  The largest submodule of "
        "P(2_1) with all composition factors of dimension 1 or 2 is 2_1/1/2_2,2_a/1/2_1, "
        "of dimension 10.";
    f.citation = "largest submodule of P(2_1) with composition factors of dimension 1 and 2";
    f.evaluate = [f](const FactorMultiset& v, const JordanPartition& jp) {
      check_fact_input(f, v);
      StructureFactEvaluation ev;
      const int64_t c = count_dim(v, 1);
      if (c < 1) return ev;
      check_involution_partition(f, v, jp);
      ev.applicable = true;
      const int64_t b = jp.count_of(1);
      if (b > c || (c - b) % 2 != 0) {
        ev.consistent = false;
        ev.detail = "an involution on a module with " + std::to_string(c) +
                    " trivial factors cannot have " + std::to_string(b) + " size-1 blocks";
        return ev;
      }
      ev.bound = 2 * b + 3 * (c - b) / 2;
      const int64_t twos = count_dim(v, 2);
      ev.consistent = twos >= ev.bound;
      ev.detail = "needs at least " + std::to_string(ev.bound) +
                  " dimension-2 factors; multiset has " + std::to_string(twos);
      return ev;
    };
    return f;
  }

  if (fact_id == "largest2and4") {
    require_range(2, 4, 6);
    f.statement =
        "A module with no trivial composition factors, c > 0 composition factors of "
        "dimension 2, and no 2-dimensional submodule or quotient has at least c "
        "composition factors of dimension 4.";
    f.citation = "largest submodule of a 4-dimensional projective cover with 2-dimensional "
                 "factors";
    f.evaluate = [f](const FactorMultiset& v, const JordanPartition&) {
      check_fact_input(f, v);
      StructureFactEvaluation ev;
      const int64_t twos = count_dim(v, 2);
      if (count_dim(v, 1) != 0 || twos < 1) return ev;
      ev.applicable = true;
      ev.bound = twos;
      const int64_t fours = count_dim(v, 4);
      ev.consistent = fours >= ev.bound;
      ev.detail = "needs at least " + std::to_string(ev.bound) +
                  " dimension-4 factors; multiset has " + std::to_string(fours);
      return ev;
    };
    return f;
  }

  if (fact_id == "largestsubmodofP4") {
    require_range(2, 2, 6);
    f.statement =
        "A module with 2n > 0 trivial composition factors and no trivial or 2-dimensional "
        "submodule or quotient has n' >= n+1 composition factors of dimension 4, and its "
        "number of dimension-2 factors lies between 2n+1 and 4n'.  The largest submodule "
        "of P(4_{1,2}) whose factors above the socle all have dimension 1 or 2 is "
        "2_2/1/2_3/1/2_2/4_{1,2}.";
    f.citation = "largest submodule of P(4_{1,2}) with small factors above the socle";
    f.evaluate = [f](const FactorMultiset& v, const JordanPartition&) {
      check_fact_input(f, v);
      StructureFactEvaluation ev;
      const int64_t trivials = count_dim(v, 1);
      if (trivials < 1 || trivials % 2 != 0) return ev;
      ev.applicable = true;
      const int64_t n = trivials / 2;
      const int64_t twos = count_dim(v, 2);
      const int64_t fours = count_dim(v, 4);
      ev.bound = n + 1;
      ev.consistent = fours >= n + 1 && twos >= 2 * n + 1 && twos <= 4 * fours;
      ev.detail = "needs >= " + std::to_string(n + 1) + " dimension-4 factors (has " +
                  std::to_string(fours) + ") and between " + std::to_string(2 * n + 1) +
                  " and " + std::to_string(4 * fours) + " dimension-2 factors (has " +
                  std::to_string(twos) + ")";
      return ev;
    };
    return f;
  }

  if (fact_id == "no414") {
    require_range(3, 2, 7);
    f.statement =
        "There is no uniserial module with composition factors 4/1/4.  Consequently, for "
        "a != 2, a module whose composition factors are 4^{2i-alpha}, 1^i with i > 0 and "
        "alpha >= 0 has a trivial submodule or quotient.";
    f.citation = "extension analysis of the 4-dimensional simple against the trivial module";
    f.evaluate = [f](const FactorMultiset& v, const JordanPartition&) {
      check_fact_input(f, v);
      StructureFactEvaluation ev;
      if (f.a == 2) return ev;
      const int64_t ones = count_dim(v, 1);
      const int64_t fours = count_dim(v, 4);
      if (ones < 1 || fours > 2 * ones || ones + fours * 4 != v.dimension()) return ev;
      ev.applicable = true;
      ev.consistent = false;
      ev.detail = "a module with these factors has a trivial submodule or quotient";
      return ev;
    };
    return f;
  }

  fail("structure_fact: unknown fact id \"" + fact_id + "\"");
}

}  // namespace exc
