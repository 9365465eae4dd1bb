/** Wire types mirroring the JSON API; the UI never derives these itself. */

export type FuzzyClassCode = "R" | "BR" | "AR" | "LR" | "NR";

export const GUEST_TYPES = ["solo", "family", "couple", "business", "friends"] as const;
export type GuestType = (typeof GUEST_TYPES)[number];

export interface RecommendationEntry {
  hotel_id: string;
  name: string;
  fuzzy_class: FuzzyClassCode;
  fuzzy_class_name: string;
  final_score: number;
  guest_fit: number;
  rank_position: number;
}

export interface HotelSummary {
  hotel_id: string;
  name: string;
  city: string;
  region: string;
  max_normalized_rank: number | null;
  fuzzy_class: FuzzyClassCode | null;
  final_score: number | null;
}

export interface HotelDetail {
  hotel_id: string;
  name: string;
  city: string;
  region: string;
  views: number;
  source_rank: Record<string, number>;
  source_votes: Record<string, number>;
  source_scores: Record<string, number>;
  cross_source_score: number;
  final_score: number | null;
  fuzzy_class: FuzzyClassCode | null;
  fuzzy_class_name: string | null;
  feature_polarity: Record<string, number>;
}

export interface ErrorBody {
  status_code: number;
  code: string;
  message: string;
}

export interface Envelope<T> {
  data: T | null;
  error: ErrorBody | null;
}

export interface SearchFormState {
  guestType: GuestType | "";
  searchTitle: string;
  city: string;
  region: string;
  /** Empty string means unset; otherwise "1".."5". */
  minRating: "" | "1" | "2" | "3" | "4" | "5";
}

export const EMPTY_FORM: SearchFormState = {
  guestType: "",
  searchTitle: "",
  city: "",
  region: "",
  minRating: "",
};

/** Either ranked recommendations or plain search summaries, as received. */
export type ResultRow = RecommendationEntry | HotelSummary;

export interface ResultsViewModel {
  entries: ResultRow[];
  loading: boolean;
  /** Human-readable error from the last failed request, or null. */
  error: string | null;
}
