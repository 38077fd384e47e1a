#include <iomanip>
#include <ostream>

#include "common.hpp"
#include "syncov/coverage.hpp"
#include "syncov/pipeline/pipeline.hpp"
#include "syncov/polynomial.hpp"

namespace syncov::pipeline {

void run_inspect(const Config& config, const InspectRequest& request, std::ostream& out) {
  const Workspace ws = load_workspace(config);
  const auto& records = request.test_side ? ws.data.tests : ws.data.corpus;
  const ExampleRecord* rec = nullptr;
  for (const auto& r : records) {
    if (r.id == request.id) rec = &r;
  }
  if (!rec) {
    throw DataError(std::string("no ") + (request.test_side ? "test input" : "corpus record") +
                    " with id " + std::to_string(request.id));
  }
  const auto& vocab = ws.data.vocab;

  out << (request.test_side ? "test " : "corpus ") << rec->id << '\n';
  out << "source: " << rec->source << '\n';
  if (!rec->target.empty()) out << "target: " << rec->target << '\n';
  out << "tokens (" << rec->source_tokens.size() << "):";
  for (const auto& t : rec->source_tokens) out << ' ' << t;
  out << "\n\ntree (" << rec->tree->size() << " nodes, height " << rec->tree->height() << "):\n";
  // Indented outline, children in input order.
  std::vector<std::pair<std::size_t, std::size_t>> stack{{rec->tree->root(), 0}};
  while (!stack.empty()) {
    const auto [pos, depth] = stack.back();
    stack.pop_back();
    const auto& node = rec->tree->nodes()[pos];
    out << std::string(2 * depth + 2, ' ') << vocab.name(node.label) << "  [" << node.id;
    if (node.id >= 1 && static_cast<std::size_t>(node.id) <= rec->source_tokens.size()) {
      out << ' ' << rec->source_tokens[node.id - 1];
    }
    out << "]\n";
    const auto kids = rec->tree->children(pos);
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.emplace_back(*it, depth + 1);
  }

  const auto& poly = *rec->polynomial;
  out << "\npolynomial (" << poly.term_count() << " terms, " << poly.distinct_terms()
      << " distinct):\n  " << format_polynomial(poly, vocab) << '\n';

  if (!request.test_side) return;
  SelectionPlan plan = config.plan;
  if (request.pool_size) plan.pool_size = *request.pool_size;
  const auto pool = candidate_pool(ws, *rec, plan);
  TermPool terms;
  TokenBag words;
  for (const auto* c : pool.candidates) {
    terms.add(*c->polynomial);
    words.merge(c->source_bag);
  }
  out << "\nBM25 pool of " << pool.candidates.size() << (pool.fallback ? " (topped up)" : "")
      << ":\n";
  out << std::setprecision(6);
  for (const auto* c : pool.candidates) {
    out << "  " << std::setw(6) << c->id << "  bm25 " << std::setw(10)
        << bm25_score(ws.index, rec->source_bag, c->id, plan.bm25) << "  syn "
        << std::setw(9) << syn_set_cov(poly, TermPool(*c->polynomial), plan.measure) << "  word "
        << std::setw(9) << word_set_cov(rec->source_bag, c->source_bag) << "  " << c->source
        << '\n';
  }
  out << "pool coverage: syntactic " << syn_set_cov(poly, terms, plan.measure) << ", lexical "
      << word_set_cov(rec->source_bag, words) << '\n';
}

}  // namespace syncov::pipeline
