// Shapes of the service API payloads, mirrored verbatim.

export type DisciplineValue = "electrical" | "mechanical" | "both";

export interface ProfileBody {
  discipline: "electrical" | "mechanical";
  professional_interests: number[];
  personal_interests: number[];
  experience: number;
  short_goal: number;
  long_goal: number;
}

export interface Profile extends ProfileBody {
  user_id: string;
}

export interface CreatedUser {
  user_id: string;
  token: string;
  profile: Profile;
}

export interface RecommendationItem {
  course_id: string;
  provider: string;
  title: string;
  predicted_rank: number;
  score: number;
}

export interface RecommendationResponse {
  user_id: string;
  items: RecommendationItem[];
  store_revision: number;
  model_revision: number;
}

export interface Course {
  course_id: string;
  provider: string;
  title: string;
  description: string;
  discipline: DisciplineValue;
  keywords: number[];
  source_url: string;
}

export interface SearchResult extends Course {
  relevance: number;
}

export interface SearchResponse {
  results: SearchResult[];
  store_revision: number;
}

export interface TableEntry {
  id: number;
  label: string;
}

export interface VocabEntry {
  id: number;
  term: string;
  discipline: DisciplineValue;
}

export interface MetaTables {
  vocabulary: VocabEntry[];
  goals: TableEntry[];
  personal_interests: TableEntry[];
  disciplines: string[];
  experience_levels: TableEntry[];
}

export interface IngestReport {
  added: number;
  updated: number;
  skipped: number;
  store_revision: number;
}

export interface TrainReport {
  model_revision: number;
  rms_error: number;
  tolerance1_accuracy: number;
  n_test: number;
}

export interface FieldError {
  field: string;
  message: string;
}
