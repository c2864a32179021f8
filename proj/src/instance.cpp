#include "rmm/instance.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace rmm {

void Matching::normalize() {
  std::sort(pairs.begin(), pairs.end());
}

bool Matching::contains(const MatchedPair& pr) const {
  return std::find(pairs.begin(), pairs.end(), pr) != pairs.end();
}

std::optional<int> Matching::post_of(int applicant) const {
  for (const auto& pr : pairs)
    if (pr.applicant == applicant) return pr.post;
  return std::nullopt;
}

std::string Signature::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(counts[i]);
  }
  out += ')';
  return out;
}

std::strong_ordering compare_signatures(const Signature& a, const Signature& b) {
  std::size_t len = std::max(a.counts.size(), b.counts.size());
  for (std::size_t i = 0; i < len; ++i) {
    int x = i < a.counts.size() ? a.counts[i] : 0;
    int y = i < b.counts.size() ? b.counts[i] : 0;
    if (x != y) return x <=> y;
  }
  return std::strong_ordering::equal;
}

const Instance::Vertex& Instance::checked_vertex(int v) const {
  if (!valid_vertex(v)) throw std::invalid_argument("bad vertex handle");
  return vertices_[v];
}

Instance::Vertex& Instance::checked_vertex(int v) {
  if (!valid_vertex(v)) throw std::invalid_argument("bad vertex handle");
  return vertices_[v];
}

const Instance::Edge& Instance::checked_edge(int e) const {
  if (!valid_edge(e)) throw std::invalid_argument("bad edge slot");
  return edges_[e];
}

int Instance::add_vertex(Side side, std::string name) {
  if (name.empty()) throw std::invalid_argument("empty vertex name");
  if (by_name_.count(name))
    throw std::invalid_argument("duplicate vertex name '" + name + "'");
  int v = static_cast<int>(vertices_.size());
  int si = side_counts_total_[static_cast<int>(side)]++;
  vertices_.push_back(Vertex{side, si, name, true, {}});
  by_name_.emplace(std::move(name), v);
  ++side_counts_[static_cast<int>(side)];
  ++alive_vertices_;
  return v;
}

void Instance::remove_vertex(int v) {
  Vertex& vx = checked_vertex(v);
  if (!vx.alive) throw std::invalid_argument("vertex already removed");
  std::vector<int> inc = vx.incident;
  for (int e : inc) remove_edge(e);
  vx.alive = false;
  by_name_.erase(vx.name);
  --side_counts_[static_cast<int>(vx.side)];
  --alive_vertices_;
}

int Instance::add_edge(int applicant, int post, int rank) {
  const Vertex& a = checked_vertex(applicant);
  const Vertex& p = checked_vertex(post);
  if (!a.alive || a.side != Side::applicant)
    throw std::invalid_argument("edge endpoint is not an alive applicant");
  if (!p.alive || p.side != Side::post)
    throw std::invalid_argument("edge endpoint is not an alive post");
  if (rank < 1) throw std::invalid_argument("rank must be at least 1");
  if (find_edge(applicant, post))
    throw std::invalid_argument("edge (" + a.name + "," + p.name +
                                ") already exists");
  int e = static_cast<int>(edges_.size());
  edges_.push_back(Edge{RankedEdge{applicant, post, rank}, true});
  vertices_[applicant].incident.push_back(e);
  vertices_[post].incident.push_back(e);
  ++alive_edges_;
  return e;
}

void Instance::remove_edge(int e) {
  const Edge& ed = checked_edge(e);
  if (!ed.alive) throw std::invalid_argument("edge already removed");
  auto detach = [this, e](int v) {
    auto& inc = vertices_[v].incident;
    inc.erase(std::find(inc.begin(), inc.end(), e));
  };
  detach(ed.data.applicant);
  detach(ed.data.post);
  edges_[e].alive = false;
  --alive_edges_;
}

VertexId Instance::id(int v) const {
  const Vertex& vx = checked_vertex(v);
  return VertexId{vx.side, vx.side_index, vx.name};
}

std::optional<int> Instance::find_vertex(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

int Instance::side_count(Side s) const {
  return side_counts_[static_cast<int>(s)];
}

std::vector<int> Instance::vertices() const {
  std::vector<int> out;
  for (int v = 0; v < vertex_slots(); ++v)
    if (vertices_[v].alive) out.push_back(v);
  return out;
}

std::vector<int> Instance::vertices(Side s) const {
  std::vector<int> out;
  for (int v = 0; v < vertex_slots(); ++v)
    if (vertices_[v].alive && vertices_[v].side == s) out.push_back(v);
  return out;
}

const RankedEdge& Instance::edge(int e) const {
  const Edge& ed = checked_edge(e);
  if (!ed.alive) throw std::invalid_argument("edge slot is removed");
  return ed.data;
}

std::optional<int> Instance::find_edge(int applicant, int post) const {
  const Vertex& a = checked_vertex(applicant);
  for (int e : a.incident)
    if (edges_[e].data.post == post) return e;
  return std::nullopt;
}

std::vector<int> Instance::edge_ids() const {
  std::vector<int> out;
  for (int e = 0; e < edge_slots(); ++e)
    if (edges_[e].alive) out.push_back(e);
  return out;
}

const std::vector<int>& Instance::incident(int v) const {
  const Vertex& vx = checked_vertex(v);
  if (!vx.alive) throw std::invalid_argument("vertex is removed");
  return vx.incident;
}

int Instance::max_rank() const {
  int r = 0;
  for (const Edge& ed : edges_)
    if (ed.alive) r = std::max(r, ed.data.rank);
  return r;
}

int Instance::other_endpoint(int e, int v) const {
  const RankedEdge& ed = edge(e);
  if (ed.applicant == v) return ed.post;
  if (ed.post == v) return ed.applicant;
  throw std::invalid_argument("vertex is not an endpoint of the edge");
}

bool Instance::operator==(const Instance& rhs) const {
  auto names = [](const Instance& in, Side s) {
    std::set<std::string> out;
    for (int v : in.vertices(s)) out.insert(in.name(v));
    return out;
  };
  auto triples = [](const Instance& in) {
    std::set<std::tuple<std::string, std::string, int>> out;
    for (int e : in.edge_ids()) {
      const RankedEdge& ed = in.edge(e);
      out.emplace(in.name(ed.applicant), in.name(ed.post), ed.rank);
    }
    return out;
  };
  return names(*this, Side::applicant) == names(rhs, Side::applicant) &&
         names(*this, Side::post) == names(rhs, Side::post) &&
         triples(*this) == triples(rhs);
}

namespace {

struct Token {
  enum class Kind { name, colon, comma, lparen, rparen } kind;
  std::string text;
};

std::vector<Token> tokenize_line(const std::string& line, int line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    switch (c) {
      case ':': out.push_back({Token::Kind::colon, ":"}); ++i; continue;
      case ',': out.push_back({Token::Kind::comma, ","}); ++i; continue;
      case '(': out.push_back({Token::Kind::lparen, "("}); ++i; continue;
      case ')': out.push_back({Token::Kind::rparen, ")"}); ++i; continue;
      default: break;
    }
    std::size_t j = i;
    while (j < line.size()) {
      char d = line[j];
      if (d == '#' || d == ':' || d == ',' || d == '(' || d == ')' ||
          std::isspace(static_cast<unsigned char>(d)))
        break;
      ++j;
    }
    out.push_back({Token::Kind::name, line.substr(i, j - i)});
    i = j;
  }
  (void)line_no;
  return out;
}

}  // namespace

Instance parse_instance(std::string_view text) {
  Instance inst;
  std::unordered_map<std::string, int> posts;  // name -> handle

  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::vector<Token> toks = tokenize_line(line, line_no);
    if (toks.empty()) continue;

    if (toks[0].kind != Token::Kind::name)
      throw ParseError(line_no, "expected applicant name");
    const std::string& aname = toks[0].text;
    if (toks.size() < 2 || toks[1].kind != Token::Kind::colon)
      throw ParseError(line_no, "expected ':' after applicant name");
    if (posts.count(aname))
      throw ParseError(line_no, "'" + aname + "' already used as a post");

    int a;
    try {
      a = inst.add_vertex(Side::applicant, aname);
    } catch (const std::invalid_argument&) {
      throw ParseError(line_no, "duplicate applicant '" + aname + "'");
    }

    // Parse the comma-separated items; each item is a post or a (..,..) tie
    // group, and its position is the rank.
    int rank = 0;
    std::set<std::string> seen_posts;
    std::size_t i = 2;
    if (i >= toks.size())
      throw ParseError(line_no, "empty preference list");
    while (i < toks.size()) {
      ++rank;
      std::vector<std::string> group;
      if (toks[i].kind == Token::Kind::name) {
        group.push_back(toks[i].text);
        ++i;
      } else if (toks[i].kind == Token::Kind::lparen) {
        ++i;
        while (true) {
          if (i >= toks.size())
            throw ParseError(line_no, "unclosed '(' in preference list");
          if (toks[i].kind == Token::Kind::rparen && !group.empty()) break;
          if (toks[i].kind != Token::Kind::name)
            throw ParseError(line_no, "expected post name in tie group");
          group.push_back(toks[i].text);
          ++i;
          if (i < toks.size() && toks[i].kind == Token::Kind::comma) ++i;
          else if (i < toks.size() && toks[i].kind == Token::Kind::rparen) break;
          else throw ParseError(line_no, "expected ',' or ')' in tie group");
        }
        ++i;  // consume ')'
      } else {
        throw ParseError(line_no, "expected post name or '('");
      }

      for (const std::string& pname : group) {
        auto existing = inst.find_vertex(pname);
        if (existing && inst.side(*existing) == Side::applicant)
          throw ParseError(line_no, "'" + pname + "' already used as an applicant");
        if (!seen_posts.insert(pname).second)
          throw ParseError(line_no, "post '" + pname + "' listed twice for '" +
                                        aname + "'");
        int p;
        auto it = posts.find(pname);
        if (it != posts.end()) {
          p = it->second;
        } else {
          p = inst.add_vertex(Side::post, pname);
          posts.emplace(pname, p);
        }
        inst.add_edge(a, p, rank);
      }

      if (i < toks.size()) {
        if (toks[i].kind != Token::Kind::comma)
          throw ParseError(line_no, "expected ',' between preference items");
        ++i;
        if (i >= toks.size())
          throw ParseError(line_no, "trailing ',' in preference list");
      }
    }
  }
  return inst;
}

std::string serialize_instance(const Instance& inst) {
  std::ostringstream out;
  for (int a : inst.vertices(Side::applicant)) {
    const std::vector<int>& inc = inst.incident(a);
    if (inc.empty()) continue;  // an isolated applicant has no text form
    std::map<int, std::vector<int>> by_rank;  // rank -> posts, insertion order
    for (int e : inc) by_rank[inst.edge(e).rank].push_back(inst.edge(e).post);
    out << inst.name(a) << " : ";
    bool first = true;
    for (const auto& [rank, group] : by_rank) {
      if (!first) out << ',';
      first = false;
      if (group.size() == 1) {
        out << inst.name(group[0]);
      } else {
        out << '(';
        for (std::size_t i = 0; i < group.size(); ++i) {
          if (i) out << ',';
          out << inst.name(group[i]);
        }
        out << ')';
      }
    }
    out << '\n';
  }
  return out.str();
}

std::string serialize_matching(const Instance& inst, const Matching& m) {
  std::vector<std::string> lines;
  for (const MatchedPair& pr : m.pairs) {
    auto e = inst.find_edge(pr.applicant, pr.post);
    if (!e)
      throw std::invalid_argument("matching pair is not an instance edge");
    lines.push_back(inst.name(pr.applicant) + " " + inst.name(pr.post) + " " +
                    std::to_string(inst.edge(*e).rank));
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const std::string& l : lines) out += l + "\n";
  return out;
}

Signature signature_of(const Instance& inst, const Matching& m) {
  Signature sig;
  sig.counts.assign(static_cast<std::size_t>(inst.max_rank()), 0);
  for (const MatchedPair& pr : m.pairs) {
    auto e = inst.find_edge(pr.applicant, pr.post);
    if (!e)
      throw std::invalid_argument("matching pair is not an instance edge");
    int rank = inst.edge(*e).rank;
    ++sig.counts[static_cast<std::size_t>(rank - 1)];
  }
  return sig;
}

std::vector<MatchingViolation> validate_matching(const Instance& inst,
                                                 const Matching& m) {
  std::vector<MatchingViolation> out;
  std::set<int> used_a, used_p;
  for (const MatchedPair& pr : m.pairs) {
    bool a_ok = inst.vertex_alive(pr.applicant) &&
                inst.side(pr.applicant) == Side::applicant;
    bool p_ok = inst.vertex_alive(pr.post) && inst.side(pr.post) == Side::post;
    if (!a_ok || !p_ok) {
      out.push_back({MatchingViolation::Kind::unknown_vertex,
                     "pair references a vertex that is not an alive "
                     "applicant/post"});
      continue;
    }
    if (!inst.find_edge(pr.applicant, pr.post)) {
      out.push_back({MatchingViolation::Kind::no_such_edge,
                     "(" + inst.name(pr.applicant) + "," + inst.name(pr.post) +
                         ") is not an edge"});
    }
    if (!used_a.insert(pr.applicant).second)
      out.push_back({MatchingViolation::Kind::duplicate_applicant,
                     "applicant " + inst.name(pr.applicant) +
                         " matched more than once"});
    if (!used_p.insert(pr.post).second)
      out.push_back({MatchingViolation::Kind::duplicate_post,
                     "post " + inst.name(pr.post) + " matched more than once"});
  }
  return out;
}

}  // namespace rmm
