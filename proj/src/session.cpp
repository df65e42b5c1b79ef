#include "confsel/session.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "confsel/errors.hpp"
#include "confsel/wire.hpp"

namespace confsel {

namespace {

using wire::Json;

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string part;
    std::istringstream in(s);
    while (std::getline(in, part, sep)) out.push_back(trim(part));
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

Json encode_header(const TranscriptHeader& h) {
    Json j;
    j["schema"] = transcript_schema;
    j["engine"] = h.engine;
    j["x"] = h.x.name();
    j["y"] = h.y.name();
    j["config"] = wire::encode(h.config);
    return j;
}

TranscriptHeader decode_header(const Json& j) {
    wire::expect_keys(j, {"schema", "engine", "x", "y", "config"});
    if (!j["schema"].is_string() || j["schema"].get<std::string>() != transcript_schema)
        throw Error(std::string("unsupported schema; expected \"") + transcript_schema + "\"");
    if (!j["engine"].is_string()) throw Error("'engine' must be a string");
    TranscriptHeader h;
    h.engine = j["engine"].get<std::string>();
    h.x = wire::decode_vertex(j["x"]);
    h.y = wire::decode_vertex(j["y"]);
    if (h.x == h.y) throw Error("treatment and outcome must differ");
    h.config = wire::decode_config(j["config"]);
    return h;
}

// Answers new questions from a fixed list in order, and repeated questions
// with their earlier answer; signals when the list runs out.
struct AnswerPending {};

class ScriptedOracle : public Oracle {
public:
    explicit ScriptedOracle(const std::vector<OracleAnswer>& answers) : answers_(answers) {}

    std::optional<VertexId> common_cause(const VertexId& a, const VertexId& b, const VertexSet& t) override {
        return std::get<CommonCauseAnswer>(next(CommonCauseQuery{a, b, t})).cause;
    }
    bool is_observed(const VertexId& v) override {
        return std::get<IsObservedAnswer>(next(IsObservedQuery{v})).observed;
    }
    VertexSetFamily find_mediator(const VertexId& a, const VertexId& b, const VertexId& cause,
                                  const VertexSet& base) override {
        return std::get<FindMediatorAnswer>(next(FindMediatorQuery{a, b, cause, base})).sets;
    }

private:
    OracleAnswer next(const OracleQuery& q) {
        if (auto it = memo_.find(q); it != memo_.end()) return it->second;
        if (used_ == answers_.size()) throw AnswerPending{};
        const OracleAnswer& a = answers_[used_++];
        memo_.emplace(q, a);
        return a;
    }
    const std::vector<OracleAnswer>& answers_;
    std::map<OracleQuery, OracleAnswer> memo_;
    std::size_t used_ = 0;
};

}  // namespace

SessionTranscript make_transcript(const VertexId& x, const VertexId& y, const ExpansionConfig& config,
                                  const std::vector<TraceEvent>& trace) {
    SessionTranscript t;
    t.header.x = x;
    t.header.y = y;
    t.header.config = config;
    for (std::size_t i = 0; i < trace.size(); ++i) t.events.push_back(SessionEvent{i + 1, trace[i]});
    return t;
}

std::string encode_transcript(const SessionTranscript& t) {
    std::string out = encode_header(t.header).dump() + "\n";
    for (const auto& e : t.events) {
        Json j;
        j["seq"] = e.seq;
        j.update(wire::encode(e.event));
        out += j.dump() + "\n";
    }
    return out;
}

SessionTranscript decode_transcript(std::string_view document) {
    std::vector<std::string> lines;
    {
        std::string doc(document);
        std::istringstream in(doc);
        std::string line;
        while (std::getline(in, line)) lines.push_back(line);
        while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
    }
    if (lines.empty()) throw TranscriptError(1, "missing header");

    SessionTranscript t;
    std::size_t open_query = 0;  // 0: no question open
    std::size_t last_query = 0;
    std::optional<OracleQuery> open_text;
    bool finished = false;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t lineno = i + 1;
        try {
            Json j = Json::parse(lines[i]);
            if (i == 0) {
                t.header = decode_header(j);
                continue;
            }
            if (finished) throw Error("event after the terminal 'finished' event");
            if (!j.is_object()) throw Error("an event must be an object");
            if (!j.contains("seq") || !j["seq"].is_number_unsigned())
                throw Error("'seq' must be a non-negative integer");
            const std::size_t seq = j["seq"].get<std::size_t>();
            if (!t.events.empty() && seq <= t.events.back().seq)
                throw Error("seq " + std::to_string(seq) + " does not increase");
            Json body = j;
            body.erase("seq");
            TraceEvent ev = wire::decode_event(body);
            if (const auto* q = std::get_if<QueryIssuedEvent>(&ev)) {
                if (open_query) throw Error("question asked while another is open");
                if (q->query_id <= last_query) throw Error("query ids must increase from 1");
                open_query = last_query = q->query_id;
                open_text = q->query;
            } else if (const auto* a = std::get_if<AnswerReceivedEvent>(&ev)) {
                if (!open_query || open_query != a->query_id)
                    throw Error("answer to query " + std::to_string(a->query_id) + " which is not open");
                if (!answers_query(*open_text, a->answer)) throw Error("answer does not fit its question");
                open_query = 0;
            } else if (std::holds_alternative<FinishedEvent>(ev)) {
                finished = true;
            }
            t.events.push_back(SessionEvent{seq, std::move(ev)});
        } catch (const TranscriptError&) {
            throw;
        } catch (const Json::exception& e) {
            throw TranscriptError(lineno, std::string("malformed JSON: ") + e.what());
        } catch (const Error& e) {
            throw TranscriptError(lineno, e.what());
        }
    }
    return t;
}

SessionTranscript read_transcript_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open transcript '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return decode_transcript(buf.str());
    } catch (const TranscriptError& e) {
        throw TranscriptError(e.line(), path + ": " + std::string(e.what()));
    }
}

void write_transcript_file(const std::string& path, const SessionTranscript& t) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write transcript '" + path + "'");
    out << encode_transcript(t);
    if (!out) throw Error("failed writing transcript '" + path + "'");
}

std::vector<AnswerEntry> recorded_answers(const SessionTranscript& t) {
    std::vector<AnswerEntry> out;
    std::optional<OracleQuery> open;
    for (const auto& e : t.events) {
        if (const auto* q = std::get_if<QueryIssuedEvent>(&e.event)) open = q->query;
        if (const auto* a = std::get_if<AnswerReceivedEvent>(&e.event)) {
            if (open) out.emplace_back(*open, a->answer);
            open.reset();
        }
    }
    return out;
}

ReplayOracle make_replay_oracle(const SessionTranscript& t) { return ReplayOracle(recorded_answers(t)); }

ReplayReport replay_transcript(const SessionTranscript& t) {
    std::vector<TraceEvent> expected;
    for (const auto& e : t.events) expected.push_back(e.event);
    const auto* last = expected.empty() ? nullptr : std::get_if<FinishedEvent>(&expected.back());
    const bool aborted = last && last->status == FinishStatus::Aborted;
    if (aborted) expected.pop_back();

    ReplayOracle oracle = make_replay_oracle(t);
    std::vector<TraceEvent> sink;
    ReplayReport report;
    try {
        report.result = confounder_select(oracle, t.header.x, t.header.y, t.header.config, &sink);
    } catch (const ReplayDivergence&) {
        // only the question left open by an aborted session may go unanswered
        if (!aborted || sink != expected) throw;
        ExpansionResult& r = report.result;
        r.trace = sink;
        r.exhausted = false;
        for (const auto& e : sink) {
            if (const auto* s = std::get_if<SetEmittedEvent>(&e))
                if (r.sufficient_sets.insert(s->set)) r.discovery_order.push_back(s->set);
            r.states_pushed += std::holds_alternative<StatePushedEvent>(e);
            r.states_popped += std::holds_alternative<StatePoppedEvent>(e);
            r.queries += std::holds_alternative<QueryIssuedEvent>(e);
        }
    }
    report.identical = sink == expected;
    if (!report.identical) {
        std::size_t i = 0;
        while (i < sink.size() && i < expected.size() && sink[i] == expected[i]) ++i;
        report.first_difference = i;
    }
    report.unused_answers = oracle.unused_entries();
    return report;
}

std::string describe_question(const OracleQuery& q) {
    struct Visitor {
        std::string operator()(const CommonCauseQuery& c) const {
            std::string s = "Is there a variable with a causal path into " + c.a.name() + " that avoids " +
                            c.b.name() + ", and one into " + c.b.name() + " that avoids " + c.a.name();
            if (!c.t.empty()) s += ", with neither path running through " + to_string(c.t);
            return s + "? Name one such variable, or answer 'none'.";
        }
        std::string operator()(const IsObservedQuery& c) const {
            return "Is " + c.v.name() + " measured in the available data? (yes/no)";
        }
        std::string operator()(const FindMediatorQuery& c) const {
            std::string s = "Take the common cause " + c.cause.name() + " of " + c.a.name() + " and " +
                            c.b.name() + ". Which minimal sets of measured variables";
            if (!c.base.empty()) s += ", together with " + to_string(c.base) + ",";
            return s + " cut every causal path from " + c.cause.name() + " to " + c.a.name() +
                   ", or every causal path from " + c.cause.name() + " to " + c.b.name() +
                   "? Separate sets with ';' and names with ',', or answer 'none'.";
        }
    };
    return std::visit(Visitor{}, q);
}

OracleAnswer parse_answer_text(const OracleQuery& q, std::string_view text) {
    const std::string t = trim(text);
    const std::string l = lower(t);
    if (std::holds_alternative<CommonCauseQuery>(q)) {
        if (l.empty() || l == "none") return CommonCauseAnswer{};
        return CommonCauseAnswer{VertexId(t)};
    }
    if (std::holds_alternative<IsObservedQuery>(q)) {
        if (l == "y" || l == "yes" || l == "true") return IsObservedAnswer{true};
        if (l == "n" || l == "no" || l == "false") return IsObservedAnswer{false};
        throw InvalidAnswer("expected yes or no, got '" + t + "'");
    }
    FindMediatorAnswer out;
    if (l.empty() || l == "none") return out;
    for (const auto& part : split(t, ';')) {
        VertexSet s;
        for (const auto& name : split(part, ','))
            if (!name.empty()) s.insert(VertexId(name));
        if (s.empty()) throw InvalidAnswer("empty mediator set in '" + t + "'");
        out.sets.insert(s);
    }
    return out;
}

const char* to_string(SessionStatus s) {
    switch (s) {
        case SessionStatus::AwaitingAnswer: return "awaiting_answer";
        case SessionStatus::Finished: return "finished";
        case SessionStatus::Aborted: return "aborted";
    }
    return "?";
}

LiveSession::LiveSession(const VertexId& x, const VertexId& y, const ExpansionConfig& config)
    : x_(x), y_(y), config_(config) {
    advance();
}

void LiveSession::advance() {
    ScriptedOracle oracle(answers_);
    events_.clear();
    pending_.reset();
    try {
        confounder_select(oracle, x_, y_, config_, &events_);
        status_ = SessionStatus::Finished;
    } catch (const AnswerPending&) {
        status_ = SessionStatus::AwaitingAnswer;
        const auto it = std::find_if(events_.rbegin(), events_.rend(), [](const TraceEvent& e) {
            return std::holds_alternative<QueryIssuedEvent>(e);
        });
        const auto& q = std::get<QueryIssuedEvent>(*it);
        pending_ = PendingQuery{q.query_id, q.query};
    }
}

void LiveSession::answer(std::size_t query_id, const OracleAnswer& a) {
    for (const auto& e : events_)
        if (const auto* r = std::get_if<AnswerReceivedEvent>(&e); r && r->query_id == query_id) {
            if (r->answer == a) return;
            throw SessionConflict("question " + std::to_string(query_id) + " was already answered with '" +
                                  to_string(r->answer) + "'");
        }
    if (status_ != SessionStatus::AwaitingAnswer)
        throw SessionConflict(std::string("no question is pending; the session is ") + to_string(status_));
    if (query_id != pending_->id)
        throw SessionConflict("question " + std::to_string(query_id) + " is not pending (pending: " +
                              std::to_string(pending_->id) + ")");
    if (!answers_query(pending_->query, a))
        throw InvalidAnswer("answer '" + to_string(a) + "' does not fit " + to_string(pending_->query));

    auto saved_events = events_;
    auto saved_pending = pending_;
    answers_.push_back(a);
    try {
        advance();
    } catch (...) {
        answers_.pop_back();
        events_ = std::move(saved_events);
        pending_ = std::move(saved_pending);
        status_ = SessionStatus::AwaitingAnswer;
        throw;
    }
}

void LiveSession::abort() {
    if (status_ != SessionStatus::AwaitingAnswer)
        throw SessionConflict(std::string("cannot abort; the session is ") + to_string(status_));
    events_.push_back(FinishedEvent{FinishStatus::Aborted});
    pending_.reset();
    status_ = SessionStatus::Aborted;
}

SessionTranscript LiveSession::transcript() const { return make_transcript(x_, y_, config_, events_); }

VertexSetFamily LiveSession::sufficient_sets() const {
    VertexSetFamily out;
    for (const auto& e : events_)
        if (const auto* s = std::get_if<SetEmittedEvent>(&e)) out.insert(s->set);
    return out;
}

std::optional<WorkingState> LiveSession::current_state() const {
    for (auto it = events_.rbegin(); it != events_.rend(); ++it)
        if (const auto* p = std::get_if<StatePoppedEvent>(&*it)) return p->state;
    return std::nullopt;
}

std::size_t LiveSession::states_pushed() const {
    return static_cast<std::size_t>(std::count_if(events_.begin(), events_.end(), [](const TraceEvent& e) {
        return std::holds_alternative<StatePushedEvent>(e);
    }));
}

std::size_t LiveSession::states_popped() const {
    return static_cast<std::size_t>(std::count_if(events_.begin(), events_.end(), [](const TraceEvent& e) {
        return std::holds_alternative<StatePoppedEvent>(e);
    }));
}

}  // namespace confsel
