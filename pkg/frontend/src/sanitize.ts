const ENTITIES: Record<string, string> = {
  '&': '&amp;',
  '<': '&lt;',
  '>': '&gt;',
  '"': '&quot;',
  "'": '&#39;',
};

export function escapeHtml(text: string): string {
  return text.replace(/[&<>"']/g, (ch) => ENTITIES[ch]);
}

/** Allow only http(s) URLs in rendered links. */
export function sanitizeUrl(url: string): string {
  return /^https?:\/\//i.test(url) ? url : '#';
}
