// JSON shapes served by the session service. Field names match the wire
// format exactly; do not rename.

export type QueryType = 'free_text' | 'highlight' | 'suggested' | 'repeat';

export interface UiConfig {
  banner: string;
  min_explore_seconds: number;
  prompts: {
    r1: string;
    r2: string;
    r3: string;
    r4_preamble: string;
    r4a: string;
    r4b: string;
  };
  systems: string[];
}

export interface CreateSessionReply {
  session_id: string;
  system_id: string;
  topic_id: string;
  initial_text: string;
  initial_word_count: number;
  r1_prompt: string;
  suggestions: string[];
  min_explore_seconds: number;
}

export interface ResponseSentence {
  doc_id: string;
  index: number;
  text: string;
}

export interface QueryReply {
  interaction_index: number;
  query_text: string;
  response_text: string;
  response_word_count: number;
  sentences: ResponseSentence[];
  exhausted: boolean;
  latency_ms: number;
  r2_prompt: string;
}

export interface FinishReply {
  accepted: boolean;
  rejected?: string;
  remaining_seconds?: number;
  log_path?: string;
}

export interface InteractionLog {
  query_text: string;
  query_type: QueryType;
  response_text: string;
  response_word_count: number;
  rating: number | null;
  timestamp_ms: number;
  latency_ms: number;
}

export interface SessionLog {
  system_id: string;
  topic_id: string;
  user_id: string;
  source: string;
  initial_text: string;
  interactions: InteractionLog[];
  ratings: {
    r1: number | null;
    r2: (number | null)[];
    r3: number | null;
    r4a: number | null;
    r4b: number | null;
  };
}
