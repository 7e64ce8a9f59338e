/** Raised when an input file does not match the documented CLI schemas. */
export class SchemaError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "SchemaError";
  }
}
