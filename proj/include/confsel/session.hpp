#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "confsel/expansion.hpp"
#include "confsel/oracle.hpp"

namespace confsel {

inline constexpr const char* transcript_schema = "confsel.transcript/1";
inline constexpr const char* engine_version = "confsel 0.1.0";

struct TranscriptHeader {
    VertexId x = "X";
    VertexId y = "Y";
    ExpansionConfig config;
    std::string engine = engine_version;
    friend bool operator==(const TranscriptHeader&, const TranscriptHeader&) = default;
};

struct SessionEvent {
    std::size_t seq = 0;
    TraceEvent event;
    friend bool operator==(const SessionEvent&, const SessionEvent&) = default;
};

struct SessionTranscript {
    TranscriptHeader header;
    std::vector<SessionEvent> events;
    friend bool operator==(const SessionTranscript&, const SessionTranscript&) = default;
};

// Numbers the events 1, 2, ... in order.
SessionTranscript make_transcript(const VertexId& x, const VertexId& y, const ExpansionConfig& config,
                                  const std::vector<TraceEvent>& trace);

// One JSON object per line: the header, then one line per event.
std::string encode_transcript(const SessionTranscript& t);
// Strict inverse of encode_transcript. Throws TranscriptError naming the line
// and event index for unknown or missing fields, non-increasing seq, answers
// without a matching open question, or events after the terminal one.
SessionTranscript decode_transcript(std::string_view document);

SessionTranscript read_transcript_file(const std::string& path);
void write_transcript_file(const std::string& path, const SessionTranscript& t);

// The (question, answer) pairs recorded in a transcript.
std::vector<AnswerEntry> recorded_answers(const SessionTranscript& t);
ReplayOracle make_replay_oracle(const SessionTranscript& t);

struct ReplayReport {
    ExpansionResult result;
    // Replayed events equal the recorded ones (for an aborted session: up to
    // the question that was left open).
    bool identical = false;
    // First event index at which the streams differ, if they do.
    std::optional<std::size_t> first_difference;
    std::size_t unused_answers = 0;
};

// Re-runs the queue variant with the transcript's configuration against its
// recorded answers. Throws ReplayDivergence if the run asks a question that
// was never answered (other than the open question of an aborted session).
ReplayReport replay_transcript(const SessionTranscript& t);

// A question phrased for a person, e.g. for terminal prompts.
std::string describe_question(const OracleQuery& q);
// Free-text answer for the given question:
//   common cause:  a vertex name, or "none" / empty
//   is observed:   yes / no (y / n)
//   find mediator: sets separated by ';', names by ',' ("C,D; E"), or "none"
// Throws InvalidName or InvalidAnswer.
OracleAnswer parse_answer_text(const OracleQuery& q, std::string_view text);

struct PendingQuery {
    std::size_t id = 0;
    OracleQuery query;
    friend bool operator==(const PendingQuery&, const PendingQuery&) = default;
};

enum class SessionStatus { AwaitingAnswer, Finished, Aborted };
const char* to_string(SessionStatus s);

// An expansion driven by answers supplied one at a time. Each answer re-runs
// the (deterministic) engine from the start against the answers given so
// far, up to the next open question. A question identical to one already
// answered is answered the same way without asking again.
class LiveSession {
public:
    LiveSession(const VertexId& x, const VertexId& y, const ExpansionConfig& config = {});

    SessionStatus status() const { return status_; }
    const std::optional<PendingQuery>& pending() const { return pending_; }
    const VertexId& x() const { return x_; }
    const VertexId& y() const { return y_; }
    const ExpansionConfig& config() const { return config_; }

    // Answers the pending question. Re-answering an earlier question with the
    // same answer is a no-op. Throws SessionConflict if query_id is neither
    // pending nor already answered identically, or the session is over;
    // InvalidAnswer if the answer does not fit the question (state unchanged).
    void answer(std::size_t query_id, const OracleAnswer& a);
    // Ends the session early; the transcript ends with Finished{aborted}.
    void abort();

    const std::vector<TraceEvent>& events() const { return events_; }
    SessionTranscript transcript() const;
    VertexSetFamily sufficient_sets() const;
    // The most recently popped working state, if any.
    std::optional<WorkingState> current_state() const;
    std::size_t states_pushed() const;
    std::size_t states_popped() const;

private:
    void advance();

    VertexId x_, y_;
    ExpansionConfig config_;
    std::vector<OracleAnswer> answers_;
    std::vector<TraceEvent> events_;
    std::optional<PendingQuery> pending_;
    SessionStatus status_ = SessionStatus::AwaitingAnswer;
};

}  // namespace confsel
